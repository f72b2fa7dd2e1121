"""Double-exponential quadrature and the 2D -> 1D integral reductions.

All unit-square integrals handled here collapse through the substitution
x = X/Y, y = Y (then t = -ln X) to one-dimensional integrands of the shape
t^a * e^(-bt) * (smooth) on (0, oo), or stay on (0, 1) against a -ln X
kernel.  tanh-sinh (finite interval) and exp-sinh (half line) transformed
trapezoid rules with level doubling handle the endpoint singularities.

Finite-interval evaluators receive (x, xc) with xc = b - x computed without
cancellation, so integrands singular at the right endpoint (e.g. containing
ln(1-x)) stay accurate; half-line evaluators receive t alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import mpmath as mp

from .core import Approx, DomainError, NonConvergenceError, guarded_prec, _round_to

DEFAULT_MAX_LEVELS = 12


@dataclass
class Integrand1D:
    f: Callable
    a: object = 0
    b: object = 1
    name: str = ""

    @property
    def infinite(self) -> bool:
        return self.b == mp.inf


def _sum_tanh_sinh(g, h, only_odd: bool, eps):
    """Trapezoid sum h * Sum_j g(j*h) (or odd j only), truncated once terms
    fall below eps relative to the running sum for several nodes in a row."""
    total = g(mp.mpf(0)) if not only_odd else mp.mpf(0)
    jmax = int(mp.ceil(mp.mpf(12) / h)) + 4
    start, step = (1, 2) if only_odd else (1, 1)
    for sign in (1, -1):
        quiet = 0
        j = start
        while j <= jmax:
            term = g(sign * j * h)
            total = total + term
            if abs(term) < eps * max(abs(total), mp.mpf(1e-300)):
                quiet += 1
                if quiet >= 4:
                    break
            else:
                quiet = 0
            j += step
    return h * total


def tanh_sinh(integrand: Integrand1D, p: int, tol,
              max_levels: int = DEFAULT_MAX_LEVELS,
              strict: bool = True) -> Approx:
    """Integrate by the double-exponential transformed trapezoid rule.

    Finite (a,b): x = (a+b)/2 + (b-a)/2 tanh((pi/2) sinh v).
    (0, oo):      t = exp((pi/2) sinh v)  (exp-sinh variant).
    Levels halve the mesh, reusing previous nodes; err is the difference of
    the last two levels.
    """
    tol = mp.mpf(tol)
    with guarded_prec(p, 16):
        wp = mp.mp.prec
        eps = mp.mpf(2) ** (-wp + 4)
        halfpi = mp.pi / 2
        f = integrand.f
        if integrand.infinite:
            if integrand.a != 0:
                raise DomainError("half-line quadrature supports (0, oo) only")

            def g(v):
                w = halfpi * mp.sinh(v)
                t = mp.exp(w)
                val = f(t)
                return val * t * halfpi * mp.cosh(v)
        else:
            a = mp.mpf(integrand.a)
            b = mp.mpf(integrand.b)
            mid = (a + b) / 2
            rad = (b - a) / 2

            def g(v):
                w = halfpi * mp.sinh(v)
                # 1 -+ tanh(w) without cancellation
                e2 = mp.exp(-2 * abs(w))
                near = 2 * e2 / (1 + e2)        # 1 - |tanh|
                far = 2 / (1 + e2)              # 1 + |tanh|
                if w >= 0:
                    x = b - rad * near
                    xc = rad * near
                else:
                    x = a + rad * near
                    xc = rad * far
                weight = rad * halfpi * mp.cosh(v) * near * far
                val = f(x, xc)
                return val * weight

        h = mp.mpf(1)
        total = _sum_tanh_sinh(g, h, only_odd=False, eps=eps)
        err = mp.inf
        evals = 1
        for level in range(1, max_levels + 1):
            h = h / 2
            refine = _sum_tanh_sinh(g, h, only_odd=True, eps=eps)
            new_total = total / 2 + refine
            err = abs(new_total - total)
            total = new_total
            evals = level + 1
            if level >= 3 and err < tol * max(abs(total), mp.mpf(1)):
                break
        else:
            if strict:
                raise NonConvergenceError(
                    f"quadrature did not reach tol={mp.nstr(tol)} in "
                    f"{max_levels} levels (last diff {mp.nstr(err)})"
                )
            # non-strict callers fold the achieved err into their own budget
        err = err + abs(total) * eps * 16
    return Approx(_round_to(total, p), _round_to(err, p), "TANH_SINH",
                  terms_used=evals, precision_used=p)


def eval_double(f: Callable, p: int, tol,
                max_levels: int = DEFAULT_MAX_LEVELS) -> Approx:
    """Direct 2D tensor quadrature of f(x, y, xc, yc) on the unit square.

    The complements xc = 1-x, yc = 1-y are supplied stably so integrands with
    a corner singularity at (1,1) can form 1 - xy as xc + yc - xc*yc.
    Smoke-test route only; the 1D reductions are the accurate path.
    """
    tol = mp.mpf(tol)

    floor = mp.mpf(2) ** (-2 * p)  # below the resolution the outer sum can see

    def outer(y, yc):
        if yc < floor:
            y, yc = 1 - floor, floor
        inner = Integrand1D(lambda x, xc: f(x, y, xc, yc), 0, 1)
        return tanh_sinh(inner, p + 8, tol / 2, max_levels).value

    est = tanh_sinh(Integrand1D(outer, 0, 1), p, tol / 2, max_levels)
    return Approx(est.value, est.err + tol / 2, "TANH_SINH_2D",
                  terms_used=est.terms_used, precision_used=p)


# ---------------------------------------------------------------------------
# Stable kernels.


def neg_log(x, xc):
    """-ln(x) for x in (0,1) given xc = 1-x, stable when x has rounded to 1."""
    r = -mp.log(x)
    if r == 0 and xc != 0:
        return xc * (1 + xc / 2)  # -ln(1-xc) to O(xc^3)
    return r


def one_minus_z_exp(z, t):
    """1 - z e^(-t) without cancellation near t = 0 (where it -> 1 - z).

    For t >= 1 the direct form is used instead: with huge |z| the expm1
    rearrangement subtracts two near-equal O(|z|) quantities.
    """
    if mp.re(t) < 1:
        return (1 - z) - z * mp.expm1(-t)
    return 1 - z * mp.exp(-t)


def exp_diff(u, v, t):
    """e^(-vt) - e^(-ut) for u != v, stable when u - v is small."""
    return -mp.exp(-v * t) * mp.expm1(-(u - v) * t)


def phi2(t):
    """t - 1 + e^(-t), by Taylor series near 0 to dodge the double cancellation."""
    if abs(t) > mp.mpf(1) / 2:
        return t - 1 + mp.exp(-t)
    # Sum_{j>=2} (-t)^j / j!
    eps = mp.mpf(2) ** (-mp.mp.prec - 4)
    total = mp.mpf(0) * t
    term = mp.mpf(1) + 0 * t
    j = 0
    while True:
        j += 1
        term = term * (-t) / j
        if j >= 2:
            total += term
            if abs(term) < eps * max(abs(total), mp.mpf(1e-300)):
                break
    return total


# ---------------------------------------------------------------------------
# Reductions.


def reduce_thm31(z, s, u, v: Optional[object] = None,
                 denom_power: int = 1) -> Integrand1D:
    """Reduced form of the unit-square integrals

        int int x^(v-1) y^(u-1) (-ln xy)^s / (1 - xyz)^d dx dy

    after x = X/Y, y = Y, t = -ln X:

        int_0^oo (e^(-vt) - e^(-ut)) t^s / ((u-v)(1 - z e^(-t))^d) dt,

    or the confluent (v = u) form  int_0^oo e^(-ut) t^(s+1)/(1 - z e^(-t))^d dt.
    """
    z = mp.mpmathify(z)
    s = mp.mpmathify(s)
    u = mp.mpf(u)
    if mp.im(z) == 0 and mp.re(z) > 1:
        raise DomainError(f"reduction invalid for z on (1, oo) (z={z})")
    d = int(denom_power)
    confluent = v is None
    if not confluent:
        v = mp.mpf(v)
        if abs(u - v) < mp.mpf(2) ** (-mp.mp.prec // 3):
            confluent = True
    if confluent:
        if not mp.re(s) > -2:
            raise DomainError(f"confluent reduction needs Re(s) > -2 (s={s})")

        def f(t):
            return mp.exp(-u * t) * mp.power(t, s + 1) / one_minus_z_exp(z, t) ** d

        return Integrand1D(f, 0, mp.inf, name=f"thm31-confluent(z={z},s={s},u={u},d={d})")
    if not mp.re(s) > -1:
        raise DomainError(f"two-parameter reduction needs Re(s) > -1 (s={s})")
    if not v > 0:
        raise DomainError(f"v must be positive (got {v})")
    uv = u - v

    def f(t):
        return exp_diff(u, v, t) * mp.power(t, s) / (uv * one_minus_z_exp(z, t) ** d)

    return Integrand1D(f, 0, mp.inf, name=f"thm31(z={z},s={s},u={u},v={v},d={d})")


def lerch_reduced_integrand(z, s, u) -> Integrand1D:
    """Integrand of the Mellin representation, e^(-ut) t^(s+1)/(1 - z e^(-t)).

    Same shape as the confluent Theorem-3.1 form with d=1.
    """
    return reduce_thm31(z, s, u, v=None, denom_power=1)


def product_kernel_reduce(g: Callable) -> Integrand1D:
    """int int g(xy) dx dy = int_0^1 g(X) (-ln X) dX.

    g is called as g(X, Xc) with Xc = 1 - X supplied stably.
    """

    def f(x, xc):
        return g(x, xc) * (-mp.log(x))

    return Integrand1D(f, 0, 1, name="product-kernel")


def hadjicostas_integrand(z, s, u) -> Integrand1D:
    """Reduced form of  int int x^(u-1) y^(u-1) (1-x) (-ln xy)^s/(1-xyz) dx dy:

        int_0^oo e^(-ut) (t - 1 + e^(-t)) t^s / (1 - z e^(-t)) dt.
    """
    z = mp.mpmathify(z)
    s = mp.mpmathify(s)
    u = mp.mpf(u)
    if mp.im(z) == 0 and mp.re(z) > 1:
        raise DomainError(f"z on the cut (z={z})")
    if not mp.re(s) > -3:
        raise DomainError(f"needs Re(s) > -3 (s={s})")

    def f(t):
        return (mp.exp(-u * t) * phi2(t) * mp.power(t, s)
                / one_minus_z_exp(z, t))

    return Integrand1D(f, 0, mp.inf, name=f"hadjicostas(z={z},s={s},u={u})")


def eq57_integrand(n: int, u) -> Integrand1D:
    """int_0^1 x^(u-1)(1-x)^n/(-ln x) dx  ->  int_0^oo e^(-ut)(1-e^(-t))^n/t dt."""
    u = mp.mpf(u)
    if n < 1:
        raise DomainError("needs n >= 1 (n = 0 diverges)")

    def f(t):
        return mp.exp(-u * t) * (-mp.expm1(-t)) ** n / t

    return Integrand1D(f, 0, mp.inf, name=f"log-denominator(n={n},u={u})")
