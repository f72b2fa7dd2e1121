"""Independent reference implementations ("oracles") for classical functions
and constants.

These deliberately avoid every binomial-series code path in lerch/special so
they can serve as ground truth for those routes: Hurwitz/Riemann zeta via
Euler-Maclaurin summation, log-gamma and digamma via Stirling's asymptotic
series with argument shifting, Catalan's constant via an Euler-transformed
alternating series, Glaisher's constant via zeta'(-1), and Somos's constant
from its defining sum.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, List, Tuple

import mpmath as mp

from .core import (DomainError, PoleError, UnknownKeyError,
                   euler_transform, guarded_prec, binom)

_bernoulli_cache: List[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2), by the defining recurrence."""
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            n = len(_bernoulli_cache)
            # sum_{k=0}^{n} C(n+1,k) B_k = 0  for n >= 1
            s = sum(binom(n + 1, k) * _bernoulli_cache[k] for k in range(n))
            _bernoulli_cache.append(Fraction(-s, n + 1))
        return _bernoulli_cache[m]


def hurwitz_zeta(s, u, p: int):
    """zeta(s, u) = Sum (u+k)^(-s) by Euler-Maclaurin; s != 1, u > 0.

    Handles complex s; the continuation is valid for all s != 1.
    """
    if not u > 0:
        raise DomainError(f"hurwitz_zeta needs u > 0 (got {u})")
    with guarded_prec(p, 32):
        wp = mp.mp.prec
        s = mp.mpmathify(s)
        u = mp.mpf(u)
        if abs(s - 1) < mp.mpf(2) ** (-wp // 2):
            raise PoleError("hurwitz zeta has a pole at s = 1")
        eps = mp.mpf(2) ** (-wp + 4)
        N = max(10, int(0.4 * wp), int(abs(mp.im(s))))
        for _ in range(6):
            w = u + N
            head = mp.fsum if mp.im(s) == 0 else sum
            total = sum((u + k) ** (-s) for k in range(N))
            total += w ** (1 - s) / (s - 1) + w ** (-s) / 2
            # asymptotic correction terms
            poch = s  # (s)_{2j-1} running product
            wpow = w ** (-s - 1)
            scale_ref = max(mp.mpf(1), abs(total))
            ok = False
            prev = mp.inf
            j = 1
            while True:
                b = bernoulli_number(2 * j)
                term = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j) * poch * wpow
                at = abs(term)
                if at < eps * scale_ref:
                    total += term
                    ok = True
                    break
                if at > prev:
                    break  # series started diverging before reaching target
                total += term
                prev = at
                poch = poch * (s + 2 * j - 1) * (s + 2 * j)
                wpow = wpow / w / w
                j += 1
            if ok:
                result = total
                break
            N *= 2
        else:
            raise RuntimeError("euler-maclaurin failed to converge")
        result = +result
    with mp.workprec(p):
        return +result


def zeta(s, p: int):
    """Riemann zeta via Euler-Maclaurin."""
    return hurwitz_zeta(s, 1, p)


def zeta_prime(s, p: int):
    """zeta'(s) by central differencing of the Euler-Maclaurin zeta."""
    with guarded_prec(p, p + 48):
        wp = mp.mp.prec
        h = mp.mpf(2) ** (-(p // 2) - 8)
        d = (hurwitz_zeta(mp.mpmathify(s) + h, 1, wp) -
             hurwitz_zeta(mp.mpmathify(s) - h, 1, wp)) / (2 * h)
    with mp.workprec(p):
        return +d


def log_gamma(x, p: int):
    """ln Gamma(x) by the Stirling series with argument shifting.

    Real x > 0 or complex x with Re(x) > 0.
    """
    with guarded_prec(p, 32):
        wp = mp.mp.prec
        x = mp.mpmathify(x)
        if mp.re(x) <= 0:
            raise DomainError("log_gamma needs Re(x) > 0; use gamma() for reflection")
        shift = 0
        target = max(10, int(0.4 * wp))
        w = x
        logs = mp.mpf(0) * w
        while mp.re(w) < target:
            logs += mp.log(w)
            w = w + 1
            shift += 1
        total = (w - mp.mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
        eps = mp.mpf(2) ** (-wp + 4)
        wpow = 1 / w
        j = 1
        prev = mp.inf
        while True:
            b = bernoulli_number(2 * j)
            term = mp.mpf(b.numerator) / b.denominator / (2 * j * (2 * j - 1)) * wpow
            at = abs(term)
            if at < eps * max(mp.mpf(1), abs(total)) or at > prev:
                total += term
                break
            total += term
            prev = at
            wpow = wpow / w / w
            j += 1
        total -= logs
    with mp.workprec(p):
        return +total


def gamma(s, p: int):
    """Gamma(s) for complex s (reflection formula on Re(s) < 1/2)."""
    with guarded_prec(p, 32):
        s = mp.mpmathify(s)
        if mp.im(s) == 0 and mp.re(s) <= 0 and mp.re(s) == mp.floor(mp.re(s)):
            raise PoleError(f"gamma pole at s = {s}")
        if mp.re(s) >= 0.5:
            result = mp.exp(log_gamma(s, mp.mp.prec))
        else:
            result = mp.pi / (mp.sin(mp.pi * s) * mp.exp(log_gamma(1 - s, mp.mp.prec)))
        if mp.im(s) == 0:
            result = mp.re(result)
    with mp.workprec(p):
        return +result


def rgamma(w, p: int):
    """1/Gamma(w), entire (reflection form 1/Gamma = Gamma(1-w) sin(pi w)/pi
    on Re(w) < 1/2, so zeros at nonpositive integers come out exactly)."""
    with guarded_prec(p, 32):
        w = mp.mpmathify(w)
        if mp.im(w) == 0 and mp.re(w) <= 0 and mp.re(w) == mp.floor(mp.re(w)):
            return mp.mpf(0)
        if mp.re(w) >= 0.5:
            result = mp.exp(-log_gamma(w, mp.mp.prec))
        else:
            result = mp.sin(mp.pi * w) * mp.exp(log_gamma(1 - w, mp.mp.prec)) / mp.pi
        if mp.im(w) == 0:
            result = mp.re(result)
    with mp.workprec(p):
        return +result


def digamma(u, p: int):
    """psi(u) for u > 0 via the Stirling asymptotic series with shifting."""
    if not u > 0:
        raise DomainError(f"digamma oracle needs u > 0 (got {u})")
    with guarded_prec(p, 32):
        wp = mp.mp.prec
        w = mp.mpf(u)
        target = max(10, int(0.4 * wp))
        recip = mp.mpf(0)
        while w < target:
            recip += 1 / w
            w += 1
        total = mp.log(w) - 1 / (2 * w)
        eps = mp.mpf(2) ** (-wp + 4)
        wpow = 1 / (w * w)
        j = 1
        prev = mp.inf
        while True:
            b = bernoulli_number(2 * j)
            term = mp.mpf(b.numerator) / b.denominator / (2 * j) * wpow
            at = abs(term)
            if at < eps * max(mp.mpf(1), abs(total)) or at > prev:
                total -= term
                break
            total -= term
            prev = at
            wpow = wpow / w / w
            j += 1
        total -= recip
    with mp.workprec(p):
        return +total


def trigamma(u, p: int):
    """psi'(u) = zeta(2, u)."""
    return hurwitz_zeta(2, u, p)


# ---------------------------------------------------------------------------
# Constant registry.

CONSTANT_NAMES = ("gamma", "catalan", "glaisher", "somos_sigma", "golden_ratio",
                  "apery", "pi", "e", "ln2")

_const_cache: Dict[Tuple[str, int], mp.mpf] = {}
_const_lock = threading.Lock()


def _compute_constant(name: str, p: int) -> mp.mpf:
    with guarded_prec(p, 16):
        wp = mp.mp.prec
        if name == "pi":
            return +mp.pi
        if name == "e":
            return +mp.e
        if name == "ln2":
            return mp.log(2)
        if name == "golden_ratio":
            return (1 + mp.sqrt(5)) / 2
        if name == "gamma":
            return -digamma(1, wp)
        if name == "catalan":
            # beta(2) = Sum (-1)^k/(2k+1)^2, Euler-transformed
            acc = euler_transform(lambda k: mp.mpf(1) / (2 * k + 1) ** 2,
                                  wp + 10, wp)
            return +acc.value
        if name == "apery":
            return zeta(3, wp)
        if name == "glaisher":
            return mp.exp(mp.mpf(1) / 12 - zeta_prime(-1, wp))
        if name == "somos_sigma":
            # sigma = prod k^(1/2^k)
            total = mp.mpf(0)
            k = 2
            half = mp.mpf(2)
            while True:
                term = mp.log(k) / mp.mpf(2) ** k
                total += term
                if term < mp.mpf(2) ** (-wp - 4):
                    break
                k += 1
            return mp.exp(total)
    raise UnknownKeyError(name)


def constant(name: str, p: int) -> mp.mpf:
    """Oracle value of a registered constant at p bits (cached, thread-safe)."""
    if name not in CONSTANT_NAMES:
        raise UnknownKeyError(name)
    key = (name, p)
    with _const_lock:
        if key in _const_cache:
            return _const_cache[key]
    val = _compute_constant(name, p)
    with mp.workprec(p):
        val = +val
    with _const_lock:
        _const_cache[key] = val
    return val
