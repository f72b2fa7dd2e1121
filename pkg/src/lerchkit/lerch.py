"""Evaluation of the Lerch transcendent Phi(z, s, u) = Sum z^k/(u+k)^s over
its analytic continuations.

Routes:
  * direct power series (|z| < 1, or |z| = 1 with Re(s) > 1);
  * the half-plane binomial series valid for Re(z) < 1/2 and all s;
  * Hasse's globally convergent series at z = 1 (s != 1);
  * the Mellin-type integral representation for z off [1, oo), Re(s) > 0;
  * square-argument splitting down to half-plane leaves;
  * exact rational closed forms at s = 0, -1, -2, ...

phi_auto dispatches between them and applies the u-shift recurrence
Phi(z,s,u+1) = (Phi(z,s,u) - u^-s)/z to pull u into (0, 2] first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import mpmath as mp

from . import oracles
from .core import (Approx, DomainError, NonConvergenceError, PoleError, PolyQ,
                   alternating_binomial_sum, binom, guarded_prec,
                   monomial_power, real_power, _round_to)
from . import quad as _quad


class MethodTag(str, enum.Enum):
    DIRECT_SERIES = "DIRECT_SERIES"
    NEGZ_SERIES = "NEGZ_SERIES"
    HASSE_SERIES = "HASSE_SERIES"
    INTEGRAL_REP = "INTEGRAL_REP"
    SPLIT_27 = "SPLIT_27"
    CLOSED_FORM = "CLOSED_FORM"
    U_SHIFT_7 = "U_SHIFT_7"
    LIMIT_FORM = "LIMIT_FORM"


class Domain(str, enum.Enum):
    Z_EQ_ONE = "Z_EQ_ONE"
    Z_HALF_PLANE = "Z_HALF_PLANE"           # Re(z) < 1/2
    Z_UNIT_SHRINKABLE = "Z_UNIT_SHRINKABLE"  # |z| < 1, Re(z) >= 1/2
    Z_INTEGRAL_ONLY = "Z_INTEGRAL_ONLY"      # |z| >= 1, Re(z) >= 1/2, off the cut
    Z_CUT = "Z_CUT"                          # z in [1, oo), z != 1


@dataclass(frozen=True)
class LerchPoint:
    z: Union[mp.mpf, mp.mpc]
    s: Union[mp.mpf, mp.mpc]
    u: mp.mpf

    def __post_init__(self):
        if not self.u > 0:
            raise DomainError(f"u must be positive (got {self.u})")

    def classify(self) -> Domain:
        z = mp.mpmathify(self.z)
        if z == 1:
            return Domain.Z_EQ_ONE
        if mp.im(z) == 0 and mp.re(z) > 1:
            return Domain.Z_CUT
        if mp.re(z) < 0.5:
            return Domain.Z_HALF_PLANE
        if abs(z) < 1:
            return Domain.Z_UNIT_SHRINKABLE
        return Domain.Z_INTEGRAL_ONLY


def point(z, s, u) -> LerchPoint:
    return LerchPoint(mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u))


DEFAULT_TERM_CAP = 200_000


def _default_tol(p: int):
    return mp.mpf(2) ** (-p + 8)


def _maybe_real(v):
    if isinstance(v, mp.mpc) and v.imag == 0:
        return v.real
    return v


# ---------------------------------------------------------------------------
# Direct series.

def phi_series_direct(z, s, u, p: int = 128, tol=None,
                      max_terms: int = DEFAULT_TERM_CAP) -> Approx:
    """Partial sum of the defining series; |z| < 1, or |z| = 1 with Re(s) > 1."""
    z, s, u = mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u)
    az = abs(z)
    on_circle = mp.almosteq(az, 1, rel_eps=mp.mpf(2) ** (-p + 2)) if az >= 1 else False
    if not (az < 1 or (on_circle and mp.re(s) > 1)):
        raise DomainError(
            f"direct series needs |z|<1, or |z|=1 with Re(s)>1 (z={z}, s={s})")
    if tol is None:
        tol = _default_tol(p)
    tol = mp.mpf(tol)
    with guarded_prec(p, 16):
        total = mp.mpf(0) * z
        zk = mp.mpf(1) + 0 * z
        quiet = 0
        k = 0
        while k < max_terms:
            term = zk * real_power(u + k, s)
            total += term
            at = abs(term)
            if at < tol * max(abs(total), mp.mpf(1e-300)):
                quiet += 1
                if quiet >= 4:
                    break
            else:
                quiet = 0
            zk *= z
            k += 1
        else:
            raise NonConvergenceError(
                f"direct series hit the {max_terms}-term cap (z={z}, s={s}, u={u})")
        if az < 1:
            err = abs(term) * az / (1 - az)
        else:
            # integral comparison tail for Sum (u+j)^(-Re s), j > k
            err = (u + k) ** (1 - mp.re(s)) / (mp.re(s) - 1)
    return Approx(_maybe_real(_round_to(total, p)), _round_to(err, p),
                  MethodTag.DIRECT_SERIES, terms_used=k + 1, precision_used=p)


# ---------------------------------------------------------------------------
# Half-plane binomial series (Re(z) < 1/2, all s).

Q_RATIO_LIMIT = mp.mpf("0.99")


def phi_series_negz(z, s, u, p: int = 128, tol=None) -> Approx:
    """Theorem-2.1 series: (1-z) Phi = Sum_n (-z/(1-z))^n Sum_k (-1)^k C(n,k)(u+k)^-s."""
    z, s, u = mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u)
    if not mp.re(z) < 0.5:
        raise DomainError(f"half-plane series needs Re(z) < 1/2 (z={z})")
    if tol is None:
        tol = _default_tol(p)
    tol = mp.mpf(tol)
    with mp.workprec(p + 32):
        q = -z / (1 - z)
        aq = abs(q)
    if aq > Q_RATIO_LIMIT:
        raise NonConvergenceError(
            f"|z/(1-z)| = {mp.nstr(aq)} > {Q_RATIO_LIMIT}: series too slow (z={z})")
    # geometric estimate of the outer term count
    if aq > 0:
        n_est = int(mp.log(tol * (1 - aq) / 4) / mp.log(aq)) + 48
    else:
        n_est = 4
    n_est = max(n_est, 8)
    with guarded_prec(p, n_est + 32):
        wp = mp.mp.prec
        powers = [real_power(u + k, s) for k in range(n_est + 1)]
        total = mp.mpf(0) * z
        cancel = mp.mpf(0)
        qn = mp.mpf(1) + 0 * z
        quiet = 0
        n = 0
        while n <= n_est:
            inner, max_term = alternating_binomial_sum(n, powers)
            term = qn * inner
            total += term
            cancel += abs(qn) * max_term * mp.mpf(2) ** (-wp)
            if abs(term) < tol * max(abs(total), mp.mpf(1e-300)):
                quiet += 1
                if quiet >= 6:
                    break
            else:
                quiet = 0
            qn *= q
            n += 1
        else:
            raise NonConvergenceError(
                f"half-plane series did not settle in {n_est} terms (z={z}, s={s}, u={u})")
        tail = abs(term) * aq / (1 - aq) if aq > 0 else mp.mpf(0)
        value = total / (1 - z)
        err = (tail + cancel) / abs(1 - z)
    return Approx(_maybe_real(_round_to(value, p)), _round_to(err, p),
                  MethodTag.NEGZ_SERIES, terms_used=n + 1, precision_used=p)


# ---------------------------------------------------------------------------
# Hasse's series at z = 1.
#
# The outer terms a_n = (1/(n+1)) Sum_k (-1)^k C(n,k)(u+k)^(1-s) decay only
# polynomially (a_n ~ n^(-u-1) up to log factors; at s=2, u=1 they are exactly
# 1/(n+1)^2), so a truncated head is paired with an Euler-Maclaurin tail in
# the index n.  The tail uses the exact integral form of the inner sum,
#
#   Sum_k (-1)^k C(n,k)(u+k)^(1-s)
#       = (1/Gamma(s-1)) Int_0^1 T^(u-1) (1-T)^n (-ln T)^(s-2) dT,
#
# valid for Re(s) > 1 - n by analytic continuation, which makes a(n) and its
# n-derivatives smooth functions computable by tanh-sinh quadrature.

HASSE_HEAD = 64
HASSE_EM_MAX = 10


def em_tail_over_np1(kernel, N: int, tol):
    """Sum_{n>=N} h(n)/(n+1), with h(x) = Int_0^1 kernel(T, 1-T) (1-T)^x dT,
    by Euler-Maclaurin in the index x at the current precision.

    Derivatives of h insert ln^i(1-T) factors; the integral term collapses the
    x-integral exactly into an exponential integral E1.  Returns (tail, err).
    Used to accelerate the polynomially convergent Hasse-type outer sums.
    """
    wp = mp.mp.prec
    qtol = mp.mpf(tol) / 8

    def h_deriv(i: int):
        # d^i/dx^i of h at x = N
        def f(x, xc):
            val = kernel(x, xc) * mp.exp(N * mp.log(xc))
            if i:
                val = val * mp.log(xc) ** i
            return val
        est = _quad.tanh_sinh(_quad.Integrand1D(f, 0, 1), wp, qtol, strict=False)
        return mp.mpmathify(est.value), est.err

    def integral_term():
        # Int_N^oo h(x)/(x+1) dx, with the x-integral done exactly via E1
        def f(x, xc):
            beta = -mp.log(xc)
            if beta == 0:
                beta = x  # xc rounded to 1; -ln(1-x) ~ x
            return kernel(x, xc) / xc * mp.e1(beta * (N + 1))
        est = _quad.tanh_sinh(_quad.Integrand1D(f, 0, 1), wp, qtol, strict=False)
        return mp.mpmathify(est.value), est.err

    hN, e0 = h_deriv(0)
    aN = hN / (N + 1)
    tail, err = integral_term()
    tail += aN / 2
    err += e0 / 2
    hs = [hN]
    prev_size = mp.inf
    for j in range(1, HASSE_EM_MAX + 1):
        m = 2 * j - 1
        while len(hs) <= m:
            hv, he = h_deriv(len(hs))
            hs.append(hv)
            err += he
        # a^(m)(N) by the product rule against 1/(n+1)
        am = hs[0] * 0
        for i in range(m + 1):
            am += (binom(m, i) * hs[i] * (-1) ** (m - i)
                   * mp.factorial(m - i) / mp.mpf(N + 1) ** (m - i + 1))
        b = oracles.bernoulli_number(2 * j)
        corr = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j) * am
        size = abs(corr)
        if size > prev_size:
            err += size  # asymptotic series turned; stop before it diverges
            break
        tail -= corr
        prev_size = size
        if size < tol / 4:
            break
    else:
        err += prev_size
    return tail, err


def _hasse_tail(s, u, N: int, tol):
    """Euler-Maclaurin tail of Hasse's outer sum; s not in {1, 0, -1, ...}."""
    rgam = 1 / oracles.gamma(s - 1, mp.mp.prec)

    def kernel(x, xc):
        return (rgam * real_power(x, 1 - u)
                * mp.power(_quad.neg_log(x, xc), s - 2))

    return em_tail_over_np1(kernel, N, tol)


def phi_hasse(s, u, p: int = 128, tol=None, head: int = HASSE_HEAD) -> Approx:
    """Hasse's series (s != 1):
    Phi(1,s,u) = 1/(s-1) * Sum_n 1/(n+1) Sum_k (-1)^k C(n,k) (u+k)^(1-s)."""
    s, u = mp.mpmathify(s), mp.mpf(u)
    if abs(s - 1) < mp.mpf(2) ** (-max(4, p // 4)):
        raise PoleError("Phi(1, s, u) has a simple pole at s = 1")
    if tol is None:
        tol = _default_tol(p)
    tol = mp.mpf(tol)
    m = _is_nonpos_int(s)
    N = head if m is None else m + 2  # inner sums vanish for n > 1-s
    with guarded_prec(p, N + 48):
        wp = mp.mp.prec
        powers = [real_power(u + k, s - 1) for k in range(N)]
        total = mp.mpf(0) * s
        cancel = mp.mpf(0)
        for n in range(N):
            inner, max_term = alternating_binomial_sum(n, powers[: n + 1])
            total += inner / (n + 1)
            cancel += max_term * mp.mpf(2) ** (-wp)
        terms = N
        if m is None:
            tail, tail_err = _hasse_tail(s, u, N, tol)
            total += tail
            cancel += tail_err
            terms += 1
        value = total / (s - 1)
        err = (cancel + abs(total) * mp.mpf(2) ** (-wp + 4)) / abs(s - 1)
    return Approx(_maybe_real(_round_to(value, p)), _round_to(err, p),
                  MethodTag.HASSE_SERIES, terms_used=terms, precision_used=p)


# ---------------------------------------------------------------------------
# Integral representation.

def phi_integral(z, s, u, p: int = 128, tol=None) -> Approx:
    """Phi via (1/Gamma(s)) Int_0^oo e^(-(u-1)t)/(e^t - z) t^(s-1) dt.

    Valid for z off the cut [1, oo) and Re(s) > 0.
    """
    z, s, u = mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u)
    if mp.im(z) == 0 and mp.re(z) >= 1:
        raise DomainError(f"integral representation invalid on the cut (z={z})")
    if not mp.re(s) > 0:
        raise DomainError(f"integral representation needs Re(s) > 0 (s={s})")
    if tol is None:
        tol = _default_tol(p)
    with guarded_prec(p, 24):
        wp = mp.mp.prec
        integrand = _quad.lerch_reduced_integrand(z, s - 2, u)
        est = _quad.tanh_sinh(integrand, wp, mp.mpf(tol))
        g = oracles.gamma(s, wp)
        value = est.value / g
        err = (est.err + abs(est.value) * mp.mpf(2) ** (-wp + 6)) / abs(g)
    return Approx(_maybe_real(_round_to(value, p)), _round_to(err, p),
                  MethodTag.INTEGRAL_REP, terms_used=est.terms_used,
                  precision_used=p)


# ---------------------------------------------------------------------------
# Splitting (Lemma 2.3).

SPLIT_MAX_DEPTH = 12


def _split_depth(z) -> Optional[int]:
    # keep squaring past the first admissible depth while the series ratio
    # |z'/(1-z')| at the leaves is still slow; each extra level doubles the
    # leaf count but shrinks the ratio quadratically
    zz = z
    best = None
    for d in range(SPLIT_MAX_DEPTH + 1):
        if d > 0:
            zz = zz * zz
        if d >= 1 and mp.re(zz) < 0.5 and abs(zz) < 0.9:
            if best is None:
                best = d
            if abs(zz / (1 - zz)) <= mp.mpf("0.6"):
                return d
    return best


def phi_split(z, s, u, p: int = 128, tol=None) -> Approx:
    """Phi(z,s,u) = 2^-s [Phi(z^2,s,u/2) + z Phi(z^2,s,(u+1)/2)], recursively,
    until the squared argument lands in the half-plane series' sweet spot."""
    z, s, u = mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u)
    d = _split_depth(z)
    if d is None:
        raise DomainError(
            f"no squaring depth <= {SPLIT_MAX_DEPTH} brings z={z} into the half-plane")
    if tol is None:
        tol = _default_tol(p)
    tol = mp.mpf(tol)
    with guarded_prec(p, 16 + 4 * d):
        wp = mp.mp.prec
        leaf_tol = tol / (1 << d)

        def rec(zz, uu, depth):
            if depth == 0:
                a = phi_series_negz(zz, s, uu, wp, leaf_tol)
                return mp.mpmathify(a.value), a.err, a.terms_used
            z2 = zz * zz
            v0, e0, t0 = rec(z2, uu / 2, depth - 1)
            v1, e1, t1 = rec(z2, (uu + 1) / 2, depth - 1)
            two_s = real_power(2, s)  # 2^(-s)
            val = two_s * (v0 + zz * v1)
            return val, abs(two_s) * (e0 + abs(zz) * e1), t0 + t1

        value, err, terms = rec(z, u, d)
    return Approx(_maybe_real(_round_to(value, p)), _round_to(err, p),
                  MethodTag.SPLIT_27, terms_used=terms, precision_used=p)


# ---------------------------------------------------------------------------
# Exact closed forms at s = 0, -1, -2, ...

def _closed_form_terms(m: int) -> List[Tuple[int, List[Fraction], int]]:
    """Terms (i, num_coeffs, d) meaning u^i * N(z)/(1-z)^d for Phi(z,-m,u).

    Built by m applications of (u + z d/dz) to 1/(1-z).
    """
    # term representation: dict (i, d) -> list of Fraction (poly in z, ascending)
    terms = {(0, 1): [Fraction(1)]}
    for _ in range(m):
        new: dict = {}

        def add(key, poly):
            cur = new.get(key)
            if cur is None:
                new[key] = list(poly)
            else:
                ln = max(len(cur), len(poly))
                new[key] = [
                    (cur[i] if i < len(cur) else 0) + (poly[i] if i < len(poly) else 0)
                    for i in range(ln)
                ]

        for (i, d), num in terms.items():
            # u * term
            add((i + 1, d), num)
            # z * N'(z) / (1-z)^d  ->  z N'(z)(1-z)/(1-z)^(d+1)
            dnum = [num[j] * j for j in range(1, len(num))]
            zdnum = [Fraction(0)] + dnum            # z * N'
            # multiply by (1-z): c_j - c_{j-1}
            prod = [Fraction(0)] * (len(zdnum) + 1)
            for j, c in enumerate(zdnum):
                prod[j] += c
                prod[j + 1] -= c
            add((i, d + 1), prod)
            # z * N * d / (1-z)^(d+1)
            add((i, d + 1), [Fraction(0)] + [c * d for c in num])
        terms = new
    return [(i, num, d) for (i, d), num in terms.items()]


def phi_closed_nonpos_int_s(z, m: int, u):
    """Exact value of Phi(z, -m, u) (z != 1) as a rational function of (z, u).

    Exact (Fraction) when z and u are int/Fraction; otherwise numeric at the
    current mpmath precision.
    """
    if m < 0:
        raise DomainError("m must be >= 0")
    exact = isinstance(z, (int, Fraction)) and isinstance(u, (int, Fraction))
    if exact:
        z = Fraction(z)
        u = Fraction(u)
        if z == 1:
            raise PoleError("closed form has a pole at z = 1")
        one_minus = 1 - z
    else:
        z = mp.mpmathify(z)
        u = mp.mpmathify(u)
        if z == 1:
            raise PoleError("closed form has a pole at z = 1")
        one_minus = 1 - z
    total = 0 if exact else mp.mpf(0) * z
    for i, num, d in _closed_form_terms(m):
        nv = 0 if exact else mp.mpf(0) * z
        for c in reversed(num):
            nv = nv * z + c
        total += (u ** i) * nv / one_minus ** d
    return total


def bernoulli_poly(m: int) -> PolyQ:
    """Exact Bernoulli polynomial via the finite double binomial sum."""
    acc = PolyQ([0])
    for n in range(m + 1):
        inner = PolyQ([0])
        for k in range(n + 1):
            part = monomial_power(k, m).scale(Fraction((-1) ** k * binom(n, k)))
            inner = inner + part
        acc = acc + inner.scale(Fraction(1, n + 1))
    return acc


def euler_poly(m: int) -> PolyQ:
    """Exact Euler polynomial via the finite double binomial sum."""
    acc = PolyQ([0])
    for n in range(m + 1):
        inner = PolyQ([0])
        for k in range(n + 1):
            part = monomial_power(k, m).scale(Fraction((-1) ** k * binom(n, k)))
            inner = inner + part
        acc = acc + inner.scale(Fraction(1, 2 ** n))
    return acc


# ---------------------------------------------------------------------------
# Dispatcher.

def _is_nonpos_int(s) -> Optional[int]:
    s = mp.mpmathify(s)
    if mp.im(s) == 0 and mp.re(s) <= 0 and mp.isint(mp.re(s)):
        return int(-mp.re(s))
    return None


def phi_auto(z, s, u, p: int = 128, tol=None) -> Approx:
    """Evaluate Phi(z, s, u) by the best applicable route."""
    z, s, u = mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u)
    if not u > 0:
        raise DomainError(f"u must be positive (got {u})")
    if tol is None:
        tol = _default_tol(p)

    if u > 2 and z != 0:
        return _phi_shifted(z, s, u, p, tol)
    return _phi_dispatch(z, s, u, p, tol)


def _phi_dispatch(z, s, u, p, tol) -> Approx:
    m = _is_nonpos_int(s)
    if z == 1:
        return phi_hasse(s, u, p, tol)
    if m is not None:
        with guarded_prec(p, 16):
            val = phi_closed_nonpos_int_s(z, m, u)
        return Approx(_maybe_real(_round_to(val, p)),
                      _round_to(abs(val) * mp.mpf(2) ** (-p + 4) if val else mp.mpf(0), p),
                      MethodTag.CLOSED_FORM, terms_used=m + 1, precision_used=p)
    if mp.re(z) < 0.5:
        q = abs(z / (1 - z))
        if q <= Q_RATIO_LIMIT:
            return phi_series_negz(z, s, u, p, tol)
        if mp.re(s) > 0:
            return phi_integral(z, s, u, p, tol)
        raise DomainError(
            f"z={z} too far left for the series and Re(s)<=0 blocks the integral")
    if abs(z) < 1:
        try:
            return phi_split(z, s, u, p, tol)
        except DomainError:
            if mp.re(s) > 0:
                return phi_integral(z, s, u, p, tol)
            raise
    if mp.im(z) == 0 and mp.re(z) >= 1:
        raise DomainError(f"z={z} lies on the cut [1, oo)")
    if mp.re(s) > 0:
        return phi_integral(z, s, u, p, tol)
    raise DomainError(
        f"unsupported domain: |z|>=1, Re(z)>=1/2, Re(s)<=0 (z={z}, s={s})")


def _phi_shifted(z, s, u, p, tol) -> Approx:
    """Pull u into (0, 2] with recurrence (7), then dispatch."""
    j = int(mp.ceil(u - 2))
    u0 = u - j
    with guarded_prec(p, 16 + 8 * j):
        wp = mp.mp.prec
        base = _phi_dispatch(z, s, u0, wp, mp.mpf(tol) / (2 * j))
        val = mp.mpmathify(base.value)
        err = base.err
        uu = u0
        for _ in range(j):
            val = (val - real_power(uu, s)) / z
            err = (err + abs(val) * mp.mpf(2) ** (-wp + 4)) / abs(z)
            uu += 1
    return Approx(_maybe_real(_round_to(val, p)), _round_to(err, p),
                  MethodTag.U_SHIFT_7, terms_used=base.terms_used,
                  precision_used=p)
