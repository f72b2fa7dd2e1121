"""Evaluation routes for Phi(z, s, u) and the exact polynomial families."""
import random
from fractions import Fraction

import mpmath as mp
import pytest

from lerchkit import oracles
from lerchkit.core import DomainError, NonConvergenceError, PoleError, PolyQ
from lerchkit.lerch import (bernoulli_poly, euler_poly, phi_auto,
                            phi_closed_nonpos_int_s, phi_hasse, phi_integral,
                            phi_series_direct, phi_series_negz, phi_split)

from conftest import assert_close

P = 128
TIGHT = mp.mpf("1e-30")


def test_direct_series_values():
    with mp.workprec(160):
        assert_close(phi_series_direct(0, 2, 3, P).value, mp.mpf(1) / 9, TIGHT)
        assert_close(phi_series_direct(mp.mpf("0.5"), 1, 1, P).value,
                     2 * mp.log(2), TIGHT)
        # |z|=1: tail decays like k^(1-Re s); the reported err carries the
        # integral-comparison tail bound, which dominates the last term
        est = phi_series_direct(1, 3, 1, 64, mp.mpf("1e-12"))
        assert_close(est.value, oracles.constant("apery", 96),
                     2 * est.err + mp.mpf("1e-12"))


def test_direct_series_domain():
    with pytest.raises(DomainError):
        phi_series_direct(mp.mpf("1.5"), 2, 1, P)
    with pytest.raises(DomainError):
        phi_series_direct(1, mp.mpf("0.5"), 1, P)  # |z|=1 needs Re(s)>1


def test_half_plane_series_values():
    with mp.workprec(160):
        assert_close(phi_series_negz(-1, 0, 1, P).value, mp.mpf(1) / 2, TIGHT)
        assert_close(phi_series_negz(-1, 2, 1, P).value, mp.pi ** 2 / 12, TIGHT)
    a = phi_series_negz(mp.mpf("0.3"), mp.mpf("2.5"), mp.mpf("1.7"), P)
    b = phi_series_direct(mp.mpf("0.3"), mp.mpf("2.5"), mp.mpf("1.7"), P)
    assert_close(a.value, b.value, mp.mpf("1e-25"))


def test_half_plane_series_rejections():
    with pytest.raises(DomainError):
        phi_series_negz(mp.mpf("0.6"), 2, 1, P)
    with pytest.raises(NonConvergenceError):
        phi_series_negz(mp.mpf("0.499"), 2, 1, P)  # |z/(1-z)| > 0.99


def test_hasse_values():
    with mp.workprec(160):
        assert_close(phi_hasse(2, 1, P).value, mp.pi ** 2 / 6, mp.mpf("1e-25"))
        assert_close(phi_hasse(0, 1, P).value, mp.mpf(-1) / 2, mp.mpf("1e-25"))
        assert_close(phi_hasse(-1, 1, P).value, mp.mpf(-1) / 12, mp.mpf("1e-25"))
    with pytest.raises(PoleError):
        phi_hasse(1, 1, P)


def test_hasse_matches_hurwitz_oracle_grid():
    for s in (2, 3, mp.mpf("0.5"), mp.mpc("-0.5", "2")):
        for u in (1, mp.mpf("0.5"), 3):
            got = phi_hasse(s, u, P)
            ref = oracles.hurwitz_zeta(s, u, P + 16)
            assert_close(got.value, ref, mp.mpf("1e-20"), f"s={s}, u={u}")


def test_integral_values():
    with mp.workprec(160):
        assert_close(phi_integral(mp.mpf("0.5"), 1, 1, P).value,
                     2 * mp.log(2), mp.mpf("1e-25"))
        assert_close(phi_integral(-1, 2, mp.mpf("0.5"), P).value,
                     4 * oracles.constant("catalan", 160), mp.mpf("1e-25"))
        got = phi_integral(mp.mpc(0, 1), 2, 1, P)
        assert_close(got.value.real, oracles.constant("catalan", 160),
                     mp.mpf("1e-25"))
    with pytest.raises(DomainError):
        phi_integral(2, 2, 1, P)
    with pytest.raises(DomainError):
        phi_integral(mp.mpf("0.5"), mp.mpf("-0.5"), 1, P)


def test_split_matches_other_routes():
    a = phi_split(mp.mpf("0.8"), 3, 1, P)
    b = phi_series_direct(mp.mpf("0.8"), 3, 1, P)
    assert_close(a.value, b.value, mp.mpf("1e-25"))
    z = mp.mpc("0.9", "0.3")
    c = phi_split(z, 2, 1, P)
    d = phi_integral(z, 2, 1, P)
    assert_close(c.value, d.value, mp.mpf("1e-20"))
    with pytest.raises(DomainError):
        phi_split(mp.mpf("1.1"), 2, 1, P)


def test_split_identity_on_unit_circle():
    # 2^-s [Phi(z^2,s,u/2) + z Phi(z^2,s,(u+1)/2)] = Phi(z,s,u) at z = +-1
    for z in (1, -1):
        for s in (mp.mpf(3), mp.mpf("2.5")):
            u = mp.mpf("1.25")
            with mp.workprec(P + 16):
                lhs = (mp.mpf(2) ** -s
                       * (mp.mpmathify(phi_auto(z * z, s, u / 2, P).value)
                          + z * mp.mpmathify(phi_auto(z * z, s, (u + 1) / 2, P).value)))
            rhs = phi_series_direct(z, s, u, 64, mp.mpf("1e-11"))
            assert_close(lhs, rhs.value, 2 * rhs.err + mp.mpf("1e-11"),
                         f"z={z}, s={s}")


def test_closed_form_values():
    assert phi_closed_nonpos_int_s(Fraction(1, 2), 0, 7) == 2
    assert phi_closed_nonpos_int_s(-1, 1, Fraction(1, 4)) == Fraction(-1, 8)
    assert phi_closed_nonpos_int_s(-3, 0, 5) == Fraction(1, 4)
    with pytest.raises(PoleError):
        phi_closed_nonpos_int_s(1, 0, 1)


def test_auto_dispatch():
    with mp.workprec(160):
        assert_close(phi_auto(1, 3, 1, P).value,
                     oracles.constant("apery", 160), mp.mpf("1e-25"))
    assert phi_auto(-1, -2, 1, P).value == 0
    with pytest.raises(PoleError):
        phi_auto(1, 1, 1, P)
    with pytest.raises(DomainError):
        # |z|>=1, Re(z)>=1/2, Re(s)<=0 and s not a closed-form integer
        phi_auto(mp.mpc(1, 1), mp.mpf("-0.5"), 1, P)
    with pytest.raises(DomainError):
        phi_auto(2, 2, 1, P)               # cut [1, oo)
    with pytest.raises(DomainError):
        phi_auto(mp.mpf("0.5"), 2, -1, P)  # u <= 0


def test_u_shift_recurrence():
    rng = random.Random(42)
    for _ in range(12):
        z = mp.mpc(rng.uniform(-0.8, 0.45), rng.uniform(-0.4, 0.4))
        if z == 0:
            continue
        s = mp.mpf(rng.uniform(-1.5, 3))
        # keep u to 40 mantissa bits so u + 1 is exact at ambient precision
        u = mp.mpf(round(rng.uniform(0.2, 3) * 2 ** 40)) / 2 ** 40
        a = phi_auto(z, s, u + 1, P)
        b = phi_auto(z, s, u, P)
        with mp.workprec(P + 16):
            shifted = (mp.mpmathify(b.value) - u ** (-s)) / z
        tol = a.err + b.err / abs(z) + mp.mpf("1e-30")
        assert_close(a.value, shifted, tol, f"z={z}, s={s}, u={u}")


def test_s_shift_derivative_recurrence():
    # Phi(z, s+1, u) = -(1/s) dPhi/du at fixed (z, s)
    for (z, s, u) in ((mp.mpf("-0.5"), mp.mpf(2), mp.mpf("1.2")),
                      (mp.mpf("0.3"), mp.mpf("1.5"), mp.mpf("0.7"))):
        h = mp.mpf(2) ** (-P // 3)
        with mp.workprec(2 * P):
            fp = mp.mpmathify(phi_auto(z, s, u + h, 2 * P).value)
            fm = mp.mpmathify(phi_auto(z, s, u - h, 2 * P).value)
            dphi_du = (fp - fm) / (2 * h)
            lhs = mp.mpmathify(phi_auto(z, s + 1, u, 2 * P).value)
            assert_close(lhs, -dphi_du / s, 10 * h ** 2, f"z={z}, s={s}")


def test_bernoulli_poly():
    assert bernoulli_poly(0) == PolyQ([1])
    assert bernoulli_poly(1) == PolyQ([Fraction(-1, 2), 1])
    assert bernoulli_poly(2) == PolyQ([Fraction(1, 6), -1, 1])
    # umbral expansion against the exact Bernoulli numbers
    for m in range(13):
        bm = bernoulli_poly(m)
        expect = [Fraction(0)] * (m + 1)
        from lerchkit.core import binom
        for k in range(m + 1):
            expect[m - k] += binom(m, k) * oracles.bernoulli_number(k)
        assert bm == PolyQ(expect), f"m={m}"
        # reflection symmetry
        assert bm.compose_affine(1, -1) == (bm if m % 2 == 0 else bm.scale(-1))


def test_euler_poly():
    assert euler_poly(0) == PolyQ([1])
    assert euler_poly(1) == PolyQ([Fraction(-1, 2), 1])
    assert euler_poly(2) == PolyQ([0, -1, 1])
    from lerchkit.core import monomial_power
    for m in range(13):
        em = euler_poly(m)
        # defining recurrence: E_m(x+1) + E_m(x) = 2 x^m
        assert em.compose_affine(1, 1) + em == monomial_power(0, m).scale(2), f"m={m}"
        assert em.compose_affine(1, -1) == (em if m % 2 == 0 else em.scale(-1))
