"""s-derivatives of the Lerch transcendent.

Differentiating the half-plane binomial series term-by-term at s = 0 turns the
inner power sums into alternating binomial log sums; the raising operator
(u + z d/dz) is then expanded symbolically over the outer index (its action on
w^j q^(n+e), with w = 1/(1-z) and q = -z/(1-z), closes over that basis with
polynomial-in-n coefficients), giving d(Phi)/ds at s = 0, -1, -2, ... for
Re(z) < 1/2 without any numeric z-differentiation.

At z = 1 the differentiated object is the entire combination
Phi + (s-1) dPhi/ds = d/ds[(s-1) Phi(1,s,u)], whose series is the Hasse sum
with ln(u+k)(u+k)^(1-s) inner terms; its polynomially decaying outer tail is
accelerated by the same Euler-Maclaurin-in-the-index machinery as the plain
Hasse route.

A registry of closed-form special values (from the gamma/zeta/constant
oracles) and a central-difference fallback round out the module.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

import mpmath as mp

from . import lerch, oracles, special
from . import quad as _quad
from .core import (Approx, DomainError, NonConvergenceError, PoleError,
                   UnknownKeyError, alternating_binomial_sum, guarded_prec,
                   real_power, _round_to)


# ---------------------------------------------------------------------------
# The raising operator on the outer series.
#
# dPhi/ds(z, 0, u) = w * Sum_n q^n L_n  with  L_n = Sum_k (-1)^(k+1) C(n,k)
# ln(u+k).  Each application of (u + z d/dz) maps a basis term
# P(n) w^j q^(n+e) to
#     u P w^j q^(n+e)  -  j P w^j q^(n+e+1)  +  (n+e) P w^(j+1) q^(n+e)
# (using dw/dz = w^2, z w = -q, 1 - q = w), so the state stays a finite dict
# {(j, e): polynomial in n}.


def _poly_add(dst: Dict, key, poly: List) -> None:
    cur = dst.get(key)
    if cur is None:
        dst[key] = list(poly)
        return
    n = max(len(cur), len(poly))
    dst[key] = [
        (cur[i] if i < len(cur) else 0) + (poly[i] if i < len(poly) else 0)
        for i in range(n)
    ]


def _raising_weights(m: int, u) -> Dict[Tuple[int, int], List]:
    """Expand (u + z d/dz)^m over the w^j q^(n+e) basis.

    Returns {(j, e): coeffs of the n-polynomial, ascending}.  Coefficients are
    exact Fractions when u is int/Fraction, else mpf at the ambient precision.
    """
    state: Dict[Tuple[int, int], List] = {(1, 0): [Fraction(1) if
                                                  isinstance(u, (int, Fraction))
                                                  else mp.mpf(1)]}
    uc = Fraction(u) if isinstance(u, (int, Fraction)) else mp.mpf(u)
    for _ in range(m):
        new: Dict[Tuple[int, int], List] = {}
        for (j, e), poly in state.items():
            _poly_add(new, (j, e), [uc * c for c in poly])
            _poly_add(new, (j, e + 1), [-j * c for c in poly])
            # (n + e) * poly
            shifted = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                shifted[i] += e * c
                shifted[i + 1] += c
            _poly_add(new, (j + 1, e), shifted)
        state = new
    return state


def _eval_poly(coeffs: List, n: int):
    acc = mp.mpmathify(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * n + mp.mpmathify(c)
    return acc


def dphi_ds_negz(m: int, z, u, p: int = 128, tol=None) -> Approx:
    """dPhi/ds(z, -m, u) for integer m >= 0 and Re(z) < 1/2.

    Sums Sum_n q^n W_m(n) L_n with W_m the raising-operator weights and L_n
    the alternating binomial log sums; cancellation guard bits as in the
    undifferentiated half-plane series.
    """
    if m < 0:
        raise DomainError(f"m must be a nonnegative integer (got {m})")
    zq = mp.mpmathify(z)
    if not mp.re(zq) < 0.5:
        raise DomainError(f"needs Re(z) < 1/2 (z={z})")
    uf = mp.mpf(u)
    if not uf > 0:
        raise DomainError(f"u must be positive (got {u})")
    if tol is None:
        tol = lerch._default_tol(p)
    tol = mp.mpf(tol)
    with mp.workprec(p + 32):
        q = -zq / (1 - zq)
        aq = abs(q)
    if aq > lerch.Q_RATIO_LIMIT:
        raise NonConvergenceError(
            f"|z/(1-z)| = {mp.nstr(aq)} > {lerch.Q_RATIO_LIMIT}: series too slow")
    if aq > 0:
        n_est = int(mp.log(tol * (1 - aq) / 4) / mp.log(aq)) + 48 + 8 * m
    else:
        n_est = 4
    n_est = max(n_est, 8 + 2 * m)
    with guarded_prec(p, n_est + 32):
        wp = mp.mp.prec
        u_exact = u if isinstance(u, (int, Fraction)) else uf
        weights = _raising_weights(m, u_exact)
        w = 1 / (1 - zq)
        wpow = {j: w ** j for j in {j for j, _ in weights}}
        qpow = {e: q ** e for e in {e for _, e in weights}}
        logs = [mp.log(uf + k) for k in range(n_est + 1)]
        total = mp.mpf(0) * zq
        cancel = mp.mpf(0)
        qn = mp.mpf(1) + 0 * zq
        quiet = 0
        n = 0
        while n <= n_est:
            Ln, max_term = alternating_binomial_sum(n, logs, sign_offset=1)
            Wn = sum(_eval_poly(poly, n) * wpow[j] * qpow[e]
                     for (j, e), poly in weights.items())
            term = qn * Wn * Ln
            total += term
            cancel += abs(qn * Wn) * max_term * mp.mpf(2) ** (-wp)
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
                f"log series did not settle in {n_est} terms (m={m}, z={z}, u={u})")
        tail = abs(term) * aq / (1 - aq) if aq > 0 else mp.mpf(0)
        err = tail + cancel
    return Approx(lerch._maybe_real(_round_to(total, p)), _round_to(err, p),
                  "DS_NEGZ_SERIES", terms_used=n + 1, precision_used=p)


# ---------------------------------------------------------------------------
# z = 1: the entire combination Phi + (s-1) dPhi/ds.

def dphi_ds_hasse_combo(s, u, p: int = 128, tol=None,
                        head: int = lerch.HASSE_HEAD) -> Approx:
    """Phi(1,s,u) + (s-1) dPhi/ds(1,s,u)  =  d/ds[(s-1) Phi(1,s,u)]
    = Sum_n (1/(n+1)) Sum_k (-1)^(k+1) C(n,k) ln(u+k) (u+k)^(1-s).

    dPhi/ds at z=1 is recoverable as (combo - phi_hasse)/(s-1) away from s=1.
    Head of `head` exact outer terms plus an Euler-Maclaurin tail: the inner
    sum is d/ds of  rgamma(s-1) * Int_0^1 T^(u-1)(1-T)^n (-ln T)^(s-2) dT,
    giving the kernel  T^(u-1) (-ln T)^(s-2) [c1 + c2 ln(-ln T)]  with
    c2 = rgamma(s-1) and c1 = rgamma'(s-1).
    """
    s = mp.mpmathify(s)
    u = mp.mpf(u)
    if not u > 0:
        raise DomainError(f"u must be positive (got {u})")
    if abs(s - 1) < mp.mpf(2) ** (-max(4, p // 4)):
        raise PoleError("requested at (or too close to) s = 1")
    if tol is None:
        tol = lerch._default_tol(p)
    tol = mp.mpf(tol)
    N = head
    with guarded_prec(p, N + 48):
        wp = mp.mp.prec
        vals = [mp.log(u + k) * real_power(u + k, s - 1) for k in range(N)]
        total = mp.mpf(0) * s
        cancel = mp.mpf(0)
        for n in range(N):
            inner, max_term = alternating_binomial_sum(n, vals[: n + 1],
                                                       sign_offset=1)
            total += inner / (n + 1)
            cancel += max_term * mp.mpf(2) ** (-wp)
        c2 = oracles.rgamma(s - 1, wp)
        # c1 = rgamma'(s-1): central difference of the entire function at a
        # step small enough that the h^2 truncation sits below the target
        h = mp.mpf(2) ** (-(wp // 3))
        fd_p = wp + wp // 3 + 16
        c1 = (oracles.rgamma(s - 1 + h, fd_p)
              - oracles.rgamma(s - 1 - h, fd_p)) / (2 * h)

        def kernel(x, xc):
            nl = _quad.neg_log(x, xc)
            return (real_power(x, 1 - u) * mp.power(nl, s - 2)
                    * (c1 + c2 * mp.log(nl)))

        tail, tail_err = lerch.em_tail_over_np1(kernel, N, tol)
        total += tail
        err = cancel + tail_err + abs(total) * mp.mpf(2) ** (-wp + 4)
    return Approx(lerch._maybe_real(_round_to(total, p)), _round_to(err, p),
                  "DS_HASSE_COMBO", terms_used=N + 1, precision_used=p)


def digamma_limit(u, p: int = 128, tol=None) -> Approx:
    """lim_{s->1} (Phi(1,s,u) - 1/(s-1)) = -psi(u), via the log series for
    psi (slowly convergent; err reflects the truncation drift)."""
    base = special.digamma_series(u, p)
    return Approx(-base.value, base.err, "LIMIT_FORM",
                  terms_used=base.terms_used, precision_used=p)


# ---------------------------------------------------------------------------
# Closed-form special values (ground truth for the series routes).

REGISTRY_KEYS = ("eq18", "eq19", "eq20", "eq28", "eq37", "ln_gamma")


def dphi_ds_registry(key: str, u=None, p: int = 128) -> Approx:
    """Tabulated closed forms of dPhi/ds points, from the oracle constants.

    eq18:     dPhi/ds(-1, -1, 1)   = 3 ln A - (ln 2)/3 - 1/4
    eq19:     dPhi/ds(-1, -2, 1)   = 7 zeta(3)/(4 pi^2)
    eq20:     dPhi/ds(-1, -1, 1/2) = G/pi
    eq28(u):  dPhi/ds(-1,  0, u)   = ln(Gamma(u/2)/(Gamma((u+1)/2) sqrt(2)))
    eq37:     dPhi/ds(1/2, 0, 1)   = -2 ln sigma
    ln_gamma(u): dPhi/ds(1, 0, u)  = ln(Gamma(u)/sqrt(2 pi))
    """
    if key not in REGISTRY_KEYS:
        raise UnknownKeyError(key)
    if key in ("eq28", "ln_gamma"):
        if u is None:
            raise DomainError(f"key {key!r} needs the parameter u")
        u = mp.mpf(u)
        if not u > 0:
            raise DomainError(f"u must be positive (got {u})")
    with guarded_prec(p, 16):
        wp = mp.mp.prec
        if key == "eq18":
            A = oracles.constant("glaisher", wp)
            val = 3 * mp.log(A) - mp.log(2) / 3 - mp.mpf(1) / 4
        elif key == "eq19":
            z3 = oracles.constant("apery", wp)
            val = 7 * z3 / (4 * mp.pi ** 2)
        elif key == "eq20":
            G = oracles.constant("catalan", wp)
            val = G / mp.pi
        elif key == "eq28":
            val = (oracles.log_gamma(u / 2, wp)
                   - oracles.log_gamma((u + 1) / 2, wp) - mp.log(2) / 2)
        elif key == "eq37":
            sigma = oracles.constant("somos_sigma", wp)
            val = -2 * mp.log(sigma)
        else:  # ln_gamma
            val = oracles.log_gamma(u, wp) - mp.log(2 * mp.pi) / 2
        err = abs(val) * mp.mpf(2) ** (-wp + 4)
    return Approx(_round_to(val, p), _round_to(err, p), "REGISTRY",
                  terms_used=1, precision_used=p)


# ---------------------------------------------------------------------------
# Finite-difference fallback.

def dphi_ds_fd(pt: "lerch.LerchPoint", p: int = 128) -> Approx:
    """Central difference (Phi(z,s+h,u) - Phi(z,s-h,u))/(2h), h = 2^(-p/3).

    Validation fallback only; the step halves the working digits, so the
    evaluations run at boosted precision and err combines the propagated
    method errors with an h^2 curvature estimate from a wide stencil.
    """
    h = mp.mpf(2) ** (-(p // 3))
    wp = p + p // 3 + 32
    tol = mp.mpf(2) ** (-wp + 8)
    with guarded_prec(wp, 0):
        evals = {}
        for c in (-2, -1, 1, 2):
            evals[c] = lerch.phi_auto(pt.z, pt.s + c * h, pt.u, wp, tol)
        d1 = (mp.mpmathify(evals[1].value) - mp.mpmathify(evals[-1].value)) / (2 * h)
        # third derivative from the wide stencil, for the h^2 truncation term
        d3 = (mp.mpmathify(evals[2].value) - 2 * mp.mpmathify(evals[1].value)
              + 2 * mp.mpmathify(evals[-1].value) - mp.mpmathify(evals[-2].value)) / (2 * h ** 3)
        err = (max(evals[1].err, evals[-1].err) / h
               + h ** 2 * abs(d3) / 6
               + abs(d1) * mp.mpf(2) ** (-wp + 8))
    return Approx(lerch._maybe_real(_round_to(d1, p)), _round_to(err, p),
                  "CENTRAL_FD", terms_used=4, precision_used=p)
