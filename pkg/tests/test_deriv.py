"""s-derivative series, tabulated special values, and the finite-difference
fallback."""
import random

import mpmath as mp
import pytest

from lerchkit import deriv, lerch, oracles
from lerchkit.core import PoleError, UnknownKeyError

from conftest import assert_close

P = 128


def test_log_series_special_values():
    with mp.workprec(P + 32):
        assert_close(deriv.dphi_ds_negz(0, -1, 1, P).value,
                     mp.log(mp.pi / 2) / 2, mp.mpf("1e-30"))
        assert_close(deriv.dphi_ds_negz(1, -1, mp.mpf("0.5"), P).value,
                     oracles.constant("catalan", P + 32) / mp.pi,
                     mp.mpf("1e-30"))
        assert_close(deriv.dphi_ds_negz(2, -1, 1, P).value,
                     7 * oracles.constant("apery", P + 32) / (4 * mp.pi ** 2),
                     mp.mpf("1e-30"))


def test_log_series_domain():
    with pytest.raises(lerch.DomainError):
        deriv.dphi_ds_negz(0, mp.mpf("0.6"), 1, P)


def test_combo_special_values():
    with mp.workprec(P + 32):
        assert_close(deriv.dphi_ds_hasse_combo(0, 1, P).value,
                     (mp.log(2 * mp.pi) - 1) / 2, mp.mpf("1e-25"))
        A = oracles.constant("glaisher", P + 32)
        assert_close(deriv.dphi_ds_hasse_combo(-1, 1, P).value,
                     2 * mp.log(A) - mp.mpf(1) / 4, mp.mpf("1e-25"))
        ref = (mp.pi ** 2 / 6 + oracles.zeta_prime(2, P + 32))
        assert_close(deriv.dphi_ds_hasse_combo(2, 1, P).value, ref,
                     mp.mpf("1e-15"))
    with pytest.raises(PoleError):
        deriv.dphi_ds_hasse_combo(1, 1, P)


def test_digamma_limit():
    # the log series converges like N^(-u); with the default truncation the
    # achievable accuracy is only a few digits, tightest for larger u
    with mp.workprec(96):
        g = oracles.constant("gamma", 96)
        assert_close(deriv.digamma_limit(1, 64).value, g, mp.mpf("0.01"))
        assert_close(deriv.digamma_limit(mp.mpf("0.5"), 64).value,
                     g + 2 * mp.log(2), mp.mpf("0.05"))
        assert_close(deriv.digamma_limit(2, 64).value, g - 1, mp.mpf("0.01"))


def test_registry_values():
    with mp.workprec(P + 32):
        assert_close(deriv.dphi_ds_registry("eq28", 1, P).value,
                     mp.log(mp.sqrt(mp.pi) / mp.sqrt(2)), mp.mpf("1e-30"))
        sig = oracles.constant("somos_sigma", P + 32)
        assert_close(deriv.dphi_ds_registry("eq37", None, P).value,
                     -2 * mp.log(sig), mp.mpf("1e-30"))
        assert_close(deriv.dphi_ds_registry("ln_gamma", 3, P).value,
                     mp.log(2 / mp.sqrt(2 * mp.pi)), mp.mpf("1e-30"))
    with pytest.raises(UnknownKeyError):
        deriv.dphi_ds_registry("eq999", 1, P)


def test_registry_matches_series():
    # the tabulated closed forms and the differentiated series agree
    pairs = [
        ("eq19", deriv.dphi_ds_negz(2, -1, 1, P)),
        ("eq20", deriv.dphi_ds_negz(1, -1, mp.mpf("0.5"), P)),
    ]
    for key, est in pairs:
        ref = deriv.dphi_ds_registry(key, None, P)
        assert_close(est.value, ref.value, mp.mpf("1e-25"), key)


def test_fd_fallback():
    a = deriv.dphi_ds_fd(lerch.point(-1, 0, 1), 192)
    b = deriv.dphi_ds_negz(0, -1, 1, 192)
    assert_close(a.value, b.value, mp.mpf("1e-12"))
    with mp.workprec(160):
        G = oracles.constant("catalan", 160)
        got = deriv.dphi_ds_fd(lerch.point(-1, -1, mp.mpf("0.5")), P)
        assert_close(got.value, G / mp.pi, mp.mpf("1e-10"))
        sig = oracles.constant("somos_sigma", 160)
        got = deriv.dphi_ds_fd(lerch.point(mp.mpf("0.5"), 0, 1), P)
        assert_close(got.value, -2 * mp.log(sig), mp.mpf("1e-10"))


def test_series_vs_fd_random():
    rng = random.Random(2024)
    for _ in range(50):
        r = rng.uniform(0.05, 0.89)
        th = rng.uniform(0, 2 * 3.141592653589793)
        z = mp.mpc(r * mp.cos(th), r * mp.sin(th))
        if not mp.re(z) < 0.4:
            z = mp.mpc(-mp.re(z), mp.im(z))
        u = mp.mpf(rng.uniform(0.2, 3))
        a = deriv.dphi_ds_negz(0, z, u, 96)
        b = deriv.dphi_ds_fd(lerch.point(z, 0, u), 96)
        tol = a.err + b.err + mp.mpf("1e-20")
        assert_close(a.value, b.value, tol, f"z={z}, u={u}")


def test_gamma_ratio_identity_sweep():
    # dPhi/ds(-1, 0, u) = ln(Gamma(u/2) / (Gamma((u+1)/2) sqrt(2)))
    with mp.workprec(P + 32):
        wp = mp.mp.prec
        for u in (mp.mpf("0.5"), mp.mpf(1), mp.mpf("1.5"), mp.mpf(2), +mp.e):
            got = deriv.dphi_ds_negz(0, -1, u, P)
            ref = (oracles.log_gamma(u / 2, wp)
                   - oracles.log_gamma((u + 1) / 2, wp) - mp.log(2) / 2)
            assert_close(got.value, ref, mp.mpf("1e-28"), f"u={u}")


def test_combo_consistent_with_fd_at_z1():
    for s in (0, -1, 2):
        with mp.workprec(P + 32):
            combo = mp.mpmathify(deriv.dphi_ds_hasse_combo(s, 1, P).value)
            phi = mp.mpmathify(lerch.phi_hasse(s, 1, P).value)
            implied = (combo - phi) / (s - 1)
            fd = deriv.dphi_ds_fd(lerch.point(1, s, 1), P)
            assert_close(implied, fd.value, 10 * fd.err + mp.mpf("1e-20"),
                         f"s={s}")
