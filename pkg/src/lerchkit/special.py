"""Derived functions (zeta, alternating zeta, Dirichlet beta, Legendre chi,
polylogarithms), the logarithmic series for digamma and the Euler beta
function, harmonic numbers, and the infinite-product engine.

Products are evaluated entirely in log space: partial sums of
weight(n) * (alternating binomial log sum) at guard precision, exponentiated
at the end.  The 1/(n+1)-weight families converge only polynomially; they are
reported with a drift-based error estimate rather than forced to a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import mpmath as mp

from . import lerch, oracles
from .core import (Approx, DomainError, PoleError, UnknownKeyError,
                   alternating_binomial_sum, binom, guarded_prec, real_power,
                   _round_to)

#: Independent ground-truth constants ("gamma", "catalan", ...).
oracle = oracles.constant


# ---------------------------------------------------------------------------
# Zeta and its relatives.

def zeta(s, p: int = 128, tol=None) -> Approx:
    """Riemann zeta via the globally convergent geometric-weight series

        zeta(s) = 1/(1-2^(1-s)) Sum_n 2^-(n+1) Sum_k (-1)^k C(n,k)(k+1)^-s,

    falling back to the z=1 Lerch series when 2^(1-s) is too close to 1.
    """
    s = mp.mpmathify(s)
    if abs(s - 1) < mp.mpf(2) ** (-max(4, p // 4)):
        raise PoleError("zeta has a pole at s = 1")
    if tol is None:
        tol = mp.mpf(2) ** (-p + 8)
    tol = mp.mpf(tol)
    denom_head = 1 - mp.exp((1 - s) * mp.log(2))
    if abs(denom_head) < mp.mpf(2) ** (-p // 4):
        # 2^(1-s) ~ 1 off the pole (s ~ 1 + 2 pi i k/ln 2): use the other route
        a = lerch.phi_hasse(s, 1, p, tol)
        return Approx(a.value, a.err, a.method, a.terms_used, a.precision_used)
    n_est = p + 48
    with guarded_prec(p, n_est + 32):
        wp = mp.mp.prec
        powers = [real_power(1 + k, s) for k in range(n_est + 1)]
        half = mp.mpf(1) / 2
        scale = half
        total = mp.mpf(0) * s
        cancel = mp.mpf(0)
        quiet = 0
        for n in range(n_est + 1):
            inner, max_term = alternating_binomial_sum(n, powers[: n + 1])
            term = scale * inner
            total += term
            cancel += scale * max_term * mp.mpf(2) ** (-wp)
            scale *= half
            if abs(term) < tol * max(abs(total), mp.mpf(1e-300)):
                quiet += 1
                if quiet >= 6:
                    break
            else:
                quiet = 0
        denom = 1 - mp.exp((1 - s) * mp.log(2))
        value = total / denom
        err = (abs(term) * 2 + cancel) / abs(denom)
    value = value.real if isinstance(value, mp.mpc) and value.imag == 0 else value
    return Approx(_round_to(value, p), _round_to(err, p), "KNOPP_HASSE",
                  terms_used=n + 1, precision_used=p)


def zeta_star(s, p: int = 128, tol=None) -> Approx:
    """Alternating zeta Sum (-1)^(k-1)/k^s = Phi(-1, s, 1)."""
    return lerch.phi_auto(-1, s, 1, p, tol)


def beta_dirichlet(s, p: int = 128, tol=None) -> Approx:
    """Dirichlet beta Sum (-1)^k/(2k+1)^s = 2^-s Phi(-1, s, 1/2)."""
    a = lerch.phi_auto(-1, s, mp.mpf(1) / 2, p, tol)
    with guarded_prec(p, 16):
        f = real_power(2, mp.mpmathify(s))
        value = f * mp.mpmathify(a.value)
        err = abs(f) * a.err
    return Approx(_round_to(value, p), _round_to(err, p), a.method,
                  a.terms_used, p)


def chi(s, z, p: int = 128, tol=None) -> Approx:
    """Legendre chi, the odd-index series 2^-s z Phi(z^2, s, 1/2)."""
    z = mp.mpmathify(z)
    a = lerch.phi_auto(z * z, s, mp.mpf(1) / 2, p, tol)
    with guarded_prec(p, 16):
        f = real_power(2, mp.mpmathify(s)) * z
        value = f * mp.mpmathify(a.value)
        err = abs(f) * a.err
    return Approx(_round_to(value, p), _round_to(err, p), a.method,
                  a.terms_used, p)


def polylog(n, z, p: int = 128, tol=None) -> Approx:
    """Li_n(z) = z Phi(z, n, 1); real z > 1 is out of the supported domain."""
    z = mp.mpmathify(z)
    if mp.im(z) == 0 and mp.re(z) > 1:
        raise DomainError(f"polylog on the cut z > 1 unsupported (z={z})")
    if z == 0:
        return Approx(mp.mpf(0), mp.mpf(0), "TRIVIAL", 1, p)
    a = lerch.phi_auto(z, n, 1, p, tol)
    value = z * mp.mpmathify(a.value)
    err = abs(z) * a.err
    return Approx(_round_to(value, p), _round_to(err, p), a.method,
                  a.terms_used, p)


# ---------------------------------------------------------------------------
# Logarithmic series for psi and the Euler beta function.

def digamma_series(u, p: int = 64, N_cap: int = 400) -> Approx:
    """psi(u) by the slowly convergent log series
    Sum_n (1/(n+1)) Sum_k (-1)^k C(n,k) ln(u+k), truncated at N_cap.

    err is the drift over the last decade of partial sums (empirical tail
    estimate; the series converges only polynomially).
    """
    u = mp.mpf(u)
    if not u > 0:
        raise DomainError(f"needs u > 0 (got {u})")
    with guarded_prec(p, N_cap + 16):
        logs = [mp.log(u + k) for k in range(N_cap + 1)]
        total = mp.mpf(0)
        drift = mp.mpf(0)
        for n in range(N_cap + 1):
            inner, _ = alternating_binomial_sum(n, logs[: n + 1])
            term = inner / (n + 1)
            total += term
            if n >= int(0.9 * N_cap):
                drift += abs(term)
    return Approx(_round_to(total, p), _round_to(drift, p), "LOG_SERIES",
                  terms_used=N_cap + 1, precision_used=p)


def euler_beta_series(u, j: int, p: int = 64, N_cap: int = 400) -> Approx:
    """B(u,j) = Gamma(u)Gamma(j)/Gamma(u+j) by the log series
    Sum_{n>=j} (1/(n-j+1)) Sum_k (-1)^(k+1) C(n,k) ln(u+k), truncated."""
    u = mp.mpf(u)
    if not (u > 0 and j >= 1):
        raise DomainError(f"needs u > 0, j >= 1 (got u={u}, j={j})")
    with guarded_prec(p, N_cap + 16):
        logs = [mp.log(u + k) for k in range(N_cap + 1)]
        total = mp.mpf(0)
        drift = mp.mpf(0)
        for n in range(j, N_cap + 1):
            inner, _ = alternating_binomial_sum(n, logs[: n + 1], sign_offset=1)
            term = inner / (n - j + 1)
            total += term
            if n >= int(0.9 * N_cap):
                drift += abs(term)
    return Approx(_round_to(total, p), _round_to(drift, p), "LOG_SERIES",
                  terms_used=N_cap + 1 - j, precision_used=p)


def harmonic(n: int, r: int = 1) -> Fraction:
    """Exact harmonic number of order r: 1 + 1/2^r + ... + 1/n^r (0 for n=0)."""
    if n < 0 or r < 1:
        raise DomainError(f"needs n >= 0, r >= 1 (got n={n}, r={r})")
    return sum((Fraction(1, k ** r) for k in range(1, n + 1)), Fraction(0))


def ramanujan_identity_residual(z, N: int, p: int = 128):
    """|LHS_N - RHS| for the identity

        Sum H_{n,2} z^n/n + 2 Sum H_n z^n/n^2 = 3 Li_3(z) - Li_2(z) ln(1-z),

    with both left-hand sums truncated at N.  Decays geometrically in N."""
    z = mp.mpmathify(z)
    if not abs(z) < 1:
        raise DomainError(f"needs |z| < 1 (got {z})")
    if z == 0:
        return mp.mpf(0)
    with guarded_prec(p, 16):
        h1 = mp.mpf(0)
        h2 = mp.mpf(0)
        zn = mp.mpf(1) + 0 * z
        lhs = mp.mpf(0) * z
        for n in range(1, N + 1):
            h1 += mp.mpf(1) / n
            h2 += mp.mpf(1) / n ** 2
            zn *= z
            lhs += h2 * zn / n + 2 * h1 * zn / n ** 2
        li3 = mp.mpmathify(polylog(3, z, mp.mp.prec).value)
        li2 = mp.mpmathify(polylog(2, z, mp.mp.prec).value)
        rhs = 3 * li3 - li2 * mp.log(1 - z)
        res = abs(lhs - rhs)
    return _round_to(res, p)


# ---------------------------------------------------------------------------
# Infinite products.

@dataclass(frozen=True)
class ProductSpec:
    """A product exp(Sum_{n>=n0} weight(n) * inner(n)) for a named target.

    inner modes:
      "binom":       Sum_k (-1)^(k+sign_offset) C(n,k) (a+bk)^mult_pow ln(a+bk)
      "binom_ratio": Sum_k (-1)^(k+sign_offset) C(n,k) ln((a1+b1 k)/(a2+b2 k))
      "plain":       ln((n+1)/n)   (no inner sum)
      "custom":      inner(n, logs) with logs[k] = ln(k) precomputed
    """
    name: str
    weight: Callable[[int], object]
    target: str                    # constant key or "expr:" handled by caller
    mode: str = "binom"
    n0: int = 0
    sign_offset: int = 1
    a: object = 1
    b: object = 1
    a2: object = 1
    b2: object = 1
    mult_pow: int = 0
    inner: Optional[Callable] = None
    slow: bool = False             # 1/n-type weights: polynomial convergence


def _inner_values(spec: ProductSpec, N: int) -> Callable[[int], object]:
    """Precompute per-k log values; return inner(n) evaluator."""
    if spec.mode == "binom":
        exact = isinstance(spec.a, (int, Fraction)) and isinstance(spec.b, (int, Fraction))
        vals = []
        for k in range(N + 1):
            if exact:
                base = mp.mpmathify(Fraction(spec.a) + Fraction(spec.b) * k)
            else:
                base = mp.mpmathify(spec.a) + mp.mpmathify(spec.b) * k
            v = mp.log(base)
            if spec.mult_pow:
                v = v * base ** spec.mult_pow
            vals.append(v)

        def inner(n):
            tot, _ = alternating_binomial_sum(n, vals[: n + 1],
                                              sign_offset=spec.sign_offset)
            return tot
        return inner
    if spec.mode == "binom_ratio":
        a1, b1 = mp.mpmathify(spec.a), mp.mpmathify(spec.b)
        a2, b2 = mp.mpmathify(spec.a2), mp.mpmathify(spec.b2)
        vals = [mp.log((a1 + b1 * k) / (a2 + b2 * k)) for k in range(N + 1)]

        def inner(n):
            tot, _ = alternating_binomial_sum(n, vals[: n + 1],
                                              sign_offset=spec.sign_offset)
            return tot
        return inner
    if spec.mode == "plain":
        def inner(n):
            return mp.log(mp.mpf(n + 1) / n)
        return inner
    if spec.mode == "custom":
        logs = [mp.mpf(0)] + [mp.log(k) for k in range(1, N + 8)]

        def inner(n):
            return spec.inner(n, logs)
        return inner
    raise UnknownKeyError(spec.mode)


def product_log_partials(spec: ProductSpec, N: int, p: int) -> List:
    """Partial log-sums Sum_{n0<=n<=m} weight(n)*inner(n) for m = n0..N."""
    with guarded_prec(p, N + 24):
        inner = _inner_values(spec, N)
        out = []
        total = mp.mpf(0)
        for n in range(spec.n0, N + 1):
            w = spec.weight(n)
            if isinstance(w, Fraction):
                w = mp.mpf(w.numerator) / w.denominator
            total += w * inner(n)
            out.append(_round_to(total, p))
        return out


def product_eval(spec: ProductSpec, N: int, p: int = 128) -> Approx:
    """exp of the partial log-sum up to N, with a drift-based err."""
    with guarded_prec(p, N + 24):
        wp = mp.mp.prec
        inner = _inner_values(spec, N)
        total = mp.mpf(0)
        last = mp.mpf(0)
        drift = mp.mpf(0)
        for n in range(spec.n0, N + 1):
            w = spec.weight(n)
            if isinstance(w, Fraction):
                w = mp.mpf(w.numerator) / w.denominator
            term = w * inner(n)
            total += term
            last = abs(term)
            if n >= spec.n0 + int(0.9 * (N - spec.n0)):
                drift += last
        value = mp.exp(total)
        err = value * (drift + abs(total) * mp.mpf(2) ** (-wp + 8))
    return Approx(_round_to(value, p), _round_to(err, p), "PRODUCT",
                  terms_used=N - spec.n0 + 1, precision_used=p)


def product_partials(spec: ProductSpec, Ns: Sequence[int], p: int = 128):
    """Partial products at each N in Ns (shared log cache)."""
    Nmax = max(Ns)
    with guarded_prec(p, Nmax + 24):
        inner = _inner_values(spec, Nmax)
        want = sorted(set(Ns))
        out = {}
        total = mp.mpf(0)
        for n in range(spec.n0, Nmax + 1):
            w = spec.weight(n)
            if isinstance(w, Fraction):
                w = mp.mpf(w.numerator) / w.denominator
            total += w * inner(n)
            if n in want:
                out[n] = _round_to(mp.exp(total), p)
        return [(n, out[n]) for n in want]


def product_target(spec: ProductSpec, p: int):
    """Oracle value the product converges to."""
    with guarded_prec(p, 16):
        wp = mp.mp.prec
        t = spec.target
        if t == "pi_over_2":
            return _round_to(mp.pi / 2, p)
        if t == "glaisher12":
            A = oracles.constant("glaisher", wp)
            return _round_to(A ** 12 / (mp.mpf(2) ** (mp.mpf(4) / 3) * mp.e), p)
        if t == "exp_zeta3_ratio":
            z3 = oracles.constant("apery", wp)
            return _round_to(mp.exp(7 * z3 / (4 * mp.pi ** 2)), p)
        if t == "gamma_quarter_ratio":
            lg = oracles.log_gamma
            return _round_to(
                mp.exp(lg(mp.mpf(1) / 4, wp) - lg(mp.mpf(3) / 4, wp) - mp.log(2)), p)
        if t == "exp_catalan_over_pi":
            G = oracles.constant("catalan", wp)
            return _round_to(mp.exp(G / mp.pi), p)
        if t == "two_pi_over_e":
            return _round_to(2 * mp.pi / mp.e, p)
        if t == "glaisher_over_e8":
            A = oracles.constant("glaisher", wp)
            return _round_to(A / mp.exp(mp.mpf(1) / 8), p)
        if t == "exp_gamma":
            return _round_to(mp.exp(oracles.constant("gamma", wp)), p)
        if t == "exp_pi":
            return _round_to(mp.exp(mp.pi), p)
        if t == "somos":
            return oracles.constant("somos_sigma", p)
        if t == "glaisher":
            return oracles.constant("glaisher", p)
        if t == "e":
            return _round_to(+mp.e, p)
        if t.startswith("exp:"):
            x = mp.mpmathify(Fraction(t[4:]))
            return _round_to(mp.exp(x), p)
    raise UnknownKeyError(spec.target)


def _ex511_inner(n, logs):
    # Sum_{k=1}^n (-1)^k C(n-1,k-1) k^2 ln k + Sum_{k=1}^{n+4} (-1)^k C(n+3,k-1) ln k
    s1 = mp.mpf(0)
    for k in range(1, n + 1):
        s1 += (-1) ** k * binom(n - 1, k - 1) * k * k * logs[k]
    s2 = mp.mpf(0)
    for k in range(1, n + 5):
        s2 += (-1) ** k * binom(n + 3, k - 1) * logs[k]
    return s1 + s2


def _thm53_spec(x, reduced: bool = True) -> ProductSpec:
    """e^x = prod_n (prod_k (kx+1)^((-1)^(k+1) C(n,k)))^(1/n).

    For rational x = p/q the factors kx+1 may be replaced by kp+q without
    changing any partial sum with n >= 1; reduced=False keeps the kx+1 form.
    """
    x = Fraction(x)
    a, b = (x.denominator, x.numerator) if reduced else (1, x)
    return ProductSpec(
        name=f"exp-product@x={x}", weight=lambda n: Fraction(1, n),
        target=f"exp:{x}", mode="binom", n0=1, sign_offset=1,
        a=a, b=b, slow=True)


PRODUCTS: Dict[str, ProductSpec] = {
    "ex5.1": ProductSpec("pi/2", lambda n: Fraction(1, 2 ** n), "pi_over_2"),
    "ex5.2": ProductSpec("A^12/(2^(4/3) e)", lambda n: Fraction(n + 1, 2 ** n),
                         "glaisher12"),
    "ex5.3": ProductSpec("exp(7 zeta(3)/(4 pi^2))",
                         lambda n: Fraction(n * n + n, 2 ** (n + 3)),
                         "exp_zeta3_ratio"),
    "ex5.4": ProductSpec("Gamma(1/4)/(2 Gamma(3/4))",
                         lambda n: Fraction(1, 2 ** (n + 1)),
                         "gamma_quarter_ratio", b=2),
    "ex5.5": ProductSpec("exp(G/pi)", lambda n: Fraction(n, 2 ** (n + 2)),
                         "exp_catalan_over_pi", b=2),
    "ex5.6": ProductSpec("2 pi/e", lambda n: Fraction(2, n + 1),
                         "two_pi_over_e", mult_pow=1, slow=True),
    "ex5.7": ProductSpec("A/e^(1/8)", lambda n: Fraction(1, 2 * n + 2),
                         "glaisher_over_e8", mult_pow=2, slow=True),
    "ex5.8": ProductSpec("e^gamma", lambda n: Fraction(1, n + 1),
                         "exp_gamma", slow=True),
    "ex5.9": ProductSpec("e^pi", lambda n: Fraction(1, n + 1), "exp_pi",
                         mode="binom_ratio", sign_offset=0,
                         a=3, b=4, a2=1, b2=4, slow=True),
    "eq58": ProductSpec("somos (alternating)", lambda n: (-1) ** n, "somos",
                        n0=1, sign_offset=0, slow=True),
    "eq59": ProductSpec("somos (accelerated)", lambda n: Fraction(1, 2 ** n),
                        "somos", mode="plain", n0=1),
    "ex5.11": ProductSpec("glaisher", lambda n: Fraction(1, 2 * n),
                          "glaisher", mode="custom", n0=1,
                          inner=_ex511_inner, slow=True),
    "ex5.12": ProductSpec("e", lambda n: Fraction(1, n), "e", n0=1, slow=True),
    "ex5.13": _thm53_spec(2),
}


def thm53_product(x) -> ProductSpec:
    """Spec for the e^x product at any rational x >= 0."""
    return _thm53_spec(x)
