"""Precision plumbing, alternating binomial kernels, exact polynomials, and
Euler-transform series acceleration.

All numeric work is done with mpmath (binary floats at a requested bit
precision).  Alternating binomial sums of n+1 terms lose up to ~n bits to
cancellation (the central binomial coefficient is ~2^n), so every kernel here
computes at an internal guard precision of p + n + 16 bits and rounds the
result back to p bits.  Error fields are heuristic accounting (largest
intermediate term times an ulp at the guard precision), not rigorous bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath as mp

Number = Union[int, float, Fraction, mp.mpf, mp.mpc]

#: Hard ceiling on internal working precision (bits); raising it is allowed
#: but the default keeps runaway guard-bit requests from hanging a session.
DEFAULT_PRECISION_CAP = 8192

precision_cap = DEFAULT_PRECISION_CAP


class LerchkitError(Exception):
    """Base class for all lerchkit errors."""


class DomainError(LerchkitError):
    """Arguments outside the supported domain of an evaluation route."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically indistinguishable from) a pole."""


class NonConvergenceError(LerchkitError):
    """A series or quadrature failed to meet tolerance within its caps."""


class PrecisionOverflowError(LerchkitError):
    """Guard-bit request exceeded the configured precision cap."""


class UnknownKeyError(LerchkitError, KeyError):
    """Lookup of an unregistered constant / special-value key."""


def guarded_prec(p: int, extra: int):
    """Context manager for working at p + extra bits; raises if over the cap."""
    wp = p + extra
    if wp > precision_cap:
        raise PrecisionOverflowError(
            f"need {wp} bits (p={p}, guard={extra}), cap is {precision_cap}"
        )
    return mp.workprec(wp)


@dataclass(frozen=True)
class Approx:
    """A numeric result with heuristic error accounting.

    err is an absolute error estimate (last-term size plus cancellation
    accounting), not a rigorous enclosure.
    """

    value: Union[mp.mpf, mp.mpc]
    err: mp.mpf
    method: str
    terms_used: int = 0
    precision_used: int = 0

    def __post_init__(self):
        assert self.err >= 0

    @property
    def real(self) -> mp.mpf:
        return self.value.real if isinstance(self.value, mp.mpc) else self.value

    @property
    def imag(self) -> mp.mpf:
        return self.value.imag if isinstance(self.value, mp.mpc) else mp.mpf(0)


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _round_to(x, p: int):
    with mp.workprec(p):
        return +x


def alternating_binomial_sum(n: int, values: Sequence, sign_offset: int = 0):
    """Sum_{k=0..n} (-1)^(k+sign_offset) C(n,k) values[k] at the current precision.

    Returns (total, max_abs_term).  Caller is responsible for guard bits.
    """
    total = mp.mpf(0)
    max_term = mp.mpf(0)
    c = 1  # running C(n, k)
    for k in range(n + 1):
        term = c * values[k]
        at = abs(term)
        if at > max_term:
            max_term = at
        if (k + sign_offset) % 2:
            total -= term
        else:
            total += term
        c = c * (n - k) // (k + 1)
    return total, max_term


def fdiff_log_sum(n: int, a, b, p: int) -> Approx:
    """Alternating binomial log sum  Sum_k (-1)^(k+1) C(n,k) ln(a + b*k).

    a, b > 0.  Computed with p + n + 16 guard bits; err is the size of the
    largest intermediate term at one ulp of the internal precision.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"fdiff_log_sum needs a, b > 0 (got a={a}, b={b})")
    with guarded_prec(p, n + 16):
        wp = mp.mp.prec
        logs = [mp.log(mp.mpf(a) + mp.mpf(b) * k) for k in range(n + 1)]
        total, max_term = alternating_binomial_sum(n, logs, sign_offset=1)
        err = max_term * mp.mpf(2) ** (-wp)
    return Approx(_round_to(total, p), _round_to(err, p), "FDIFF_LOG",
                  terms_used=n + 1, precision_used=p)


def real_power(base, expo):
    """(base)^(-expo) via exp(-expo * log(base)) for real base > 0.

    expo may be complex; the log is always the real logarithm.
    """
    return mp.exp(-expo * mp.log(base))


def fdiff_pow_sum(n: int, u, s, p: int) -> Approx:
    """Alternating binomial power sum  Sum_k (-1)^k C(n,k) (u+k)^(-s),  u > 0."""
    if not u > 0:
        raise DomainError(f"fdiff_pow_sum needs u > 0 (got u={u})")
    with guarded_prec(p, n + 16):
        wp = mp.mp.prec
        su = mp.mpmathify(s)
        powers = [real_power(mp.mpf(u) + k, su) for k in range(n + 1)]
        total, max_term = alternating_binomial_sum(n, powers, sign_offset=0)
        err = max_term * mp.mpf(2) ** (-wp)
    return Approx(_round_to(total, p), _round_to(err, p), "FDIFF_POW",
                  terms_used=n + 1, precision_used=p)


def euler_transform(a: Callable[[int], Number], N: int, p: int,
                    tol=None) -> Approx:
    """Euler acceleration of the alternating series Sum_{n>=0} (-1)^n a_n.

    Returns Sum_{n<=N} (-Delta)^n a_0 / 2^(n+1) with Delta the forward
    difference on (a_n); err is the magnitude of the last retained term.
    Stops early once |term| < tol * |partial| (when tol is given).
    """
    with guarded_prec(p, N + 16):
        row = [mp.mpmathify(a(i)) for i in range(N + 1)]
        total = mp.mpf(0) * row[0]
        last = mp.mpf(0)
        used = 0
        half = mp.mpf(1) / 2
        scale = half
        for k in range(N + 1):
            term = row[0] * scale
            total += term
            last = abs(term)
            used = k + 1
            if tol is not None and last < mp.mpf(tol) * max(abs(total), mp.mpf(1e-300)):
                break
            # next forward-difference row, with the (-1)^k sign folded in
            row = [row[i] - row[i + 1] for i in range(len(row) - 1)]
            if not row:
                break
            scale *= half
    return Approx(_round_to(total, p), _round_to(last, p), "EULER_TRANSFORM",
                  terms_used=used, precision_used=p)


# ---------------------------------------------------------------------------
# Exact rational polynomials (coefficients ascending by degree).

class PolyQ:
    """Dense polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Union[int, Fraction]]):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = self.coeffs[-1] if not isinstance(x, (mp.mpf, mp.mpc)) else mp.mpmathify(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)
        ])

    def scale(self, c: Union[int, Fraction]) -> "PolyQ":
        c = Fraction(c)
        return PolyQ([c * a for a in self.coeffs])

    def compose_affine(self, a: Union[int, Fraction], b: Union[int, Fraction]) -> "PolyQ":
        """p(a + b*x), exactly."""
        a, b = Fraction(a), Fraction(b)
        acc = PolyQ([self.coeffs[-1]])
        for c in reversed(self.coeffs[:-1]):
            # acc = acc*(a + b x) + c
            shifted = [Fraction(0)] + [b * q for q in acc.coeffs]
            base = [a * q for q in acc.coeffs] + [Fraction(0)]
            acc = PolyQ([base[i] + shifted[i] for i in range(len(base))]) + PolyQ([c])
        return acc

    def __repr__(self):
        return f"PolyQ({list(self.coeffs)})"


def monomial_power(a: Union[int, Fraction], m: int) -> PolyQ:
    """(x + a)^m as an exact PolyQ."""
    a = Fraction(a)
    return PolyQ([binom(m, j) * a ** (m - j) for j in range(m + 1)])
