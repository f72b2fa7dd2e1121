"""Catalog of unit-square double-integral (and companion series) identities
with closed-form targets, plus the verification driver.

Every case pairs a left-hand side evaluated by quadrature (through the 1D
reductions in quad, with an optional direct 2D form for cross-checks) with a
right-hand side assembled from the oracle constants and library functions --
the target is always computable without evaluating the integral.  verify()
produces one deterministic record per case; the aggregate report is ordered
lexicographically by case id.
"""
from __future__ import annotations

import fnmatch
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import mpmath as mp

from . import deriv, lerch, oracles, special
from . import quad as _quad
from .core import (Approx, fdiff_log_sum, guarded_prec,
                   real_power, _round_to)


@dataclass(frozen=True)
class IdentityCase:
    id: str
    section: str                    # "3", "4", "2" (series/semi-infinite)
    route: str                      # reduction used for the lhs
    lhs: Callable                   # (p, tol) -> Approx
    rhs: Callable                   # (p) -> mp value
    tol: str = "1e-12"
    slow: bool = False
    needs_complex: bool = False
    lhs2d: Optional[Callable] = None  # f(x, y, xc, yc) direct 2D integrand


# ---------------------------------------------------------------------------
# lhs builders.

def _ts(integrand):
    def run(p, tol):
        return _quad.tanh_sinh(integrand, p, tol)
    return run


def _ts_scaled(integrand, scale):
    sc = mp.mpmathify(scale)

    def run(p, tol):
        est = _quad.tanh_sinh(integrand, p, mp.mpf(tol) / max(abs(sc), mp.mpf(1)))
        return Approx(est.value * sc, est.err * abs(sc), est.method,
                      est.terms_used, est.precision_used)
    return run


def _pk(g):
    """Lhs of Int Int g(xy) dx dy via the -ln X kernel reduction."""
    return _ts(_quad.product_kernel_reduce(g))


def _fin(f, name=""):
    return _quad.Integrand1D(f, 0, 1, name=name)


def _pow_diff(x, u, v):
    """x^(v-1) - x^(u-1) without cancellation (u > v assumed close or not)."""
    # x^(v-1) (1 - x^(u-v))
    return real_power(x, 1 - v) * (-mp.expm1((u - v) * mp.log(x)))


def _th31_finite(z, s, u, v, d: int = 1):
    """Finite-interval form of the two-parameter reduction,
    (X^(v-1) - X^(u-1)) (-ln X)^s / ((u-v)(1-Xz)^d) on (0,1); usable down to
    Re(s) > -2 because the power difference is formed stably before the
    division by u - v."""
    z = mp.mpmathify(z)
    s = mp.mpmathify(s)
    u, v = mp.mpf(u), mp.mpf(v)
    uv = u - v

    def f(x, xc):
        nl = _quad.neg_log(x, xc)
        return _pow_diff(x, u, v) * mp.power(nl, s) / (uv * (1 - x * z) ** d)

    return _fin(f, name=f"thm31-finite(z={z},s={s},u={u},v={v},d={d})")


def _log_denom(z, u, v, d: int = 1):
    """(X^(v-1) - X^(u-1)) / ((u-v)(1-Xz)^d (-ln X)) on (0,1): the s -> -1
    limit of the two-parameter family, whose value is a difference of
    dPhi/ds values at s = 0 (or of digamma values at z = 1)."""
    z = mp.mpmathify(z)
    u, v = mp.mpf(u), mp.mpf(v)
    uv = u - v

    def f(x, xc):
        nl = _quad.neg_log(x, xc)
        return _pow_diff(x, u, v) / (uv * (1 - x * z) ** d * nl)

    return _fin(f, name=f"log-denom(z={z},u={u},v={v},d={d})")


# ---------------------------------------------------------------------------
# rhs helpers (each takes p and returns an mp value).

def _const(name, factor=1):
    def rhs(p):
        with guarded_prec(p, 16):
            return _round_to(oracles.constant(name, mp.mp.prec) * factor, p)
    return rhs


def _expr(fn):
    def rhs(p):
        with guarded_prec(p, 16):
            return _round_to(fn(mp.mp.prec), p)
    return rhs


def _phi_rhs(z, s, u, factor=1):
    def rhs(p):
        with guarded_prec(p, 16):
            wp = mp.mp.prec
            return _round_to(mp.mpmathify(lerch.phi_auto(z, s, u, wp).value)
                             * factor, p)
    return rhs


def _golden(wp):
    return oracles.constant("golden_ratio", wp)


def _li(n, z, wp):
    return mp.mpmathify(special.polylog(n, z, wp).value)


# ---------------------------------------------------------------------------
# The registry.

_REGISTRY_CACHE: Optional[List[IdentityCase]] = None


def _build() -> List[IdentityCase]:
    cases: List[IdentityCase] = []
    add = cases.append
    nl = _quad.neg_log

    def xy_c(xc, yc):
        # 1 - xy from the complements, stable at the (1,1) corner
        return xc + yc - xc * yc

    # ------------------------------------------------------------------ #3
    # 1/(1 + i xy) over the square: real part a lattice-sum constant, the
    # imaginary part a pi^2 multiple.
    add(IdentityCase(
        "ex3.1", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / (1 + X * mp.mpc(0, 1))),
        _expr(lambda wp: oracles.constant("catalan", wp)
              - mp.mpc(0, 1) * mp.pi ** 2 / 48),
        needs_complex=True,
        lhs2d=lambda x, y, xc, yc: 1 / (1 + x * y * mp.mpc(0, 1))))

    add(IdentityCase(
        "ex3.2", "3", "reduced-halfline",
        _ts_scaled(_quad.reduce_thm31(-1, 1, 1, v=mp.mpf("0.5")),
                   mp.mpf(1) / 8),
        _expr(lambda wp: oracles.constant("catalan", wp) - mp.pi ** 2 / 48)))

    add(IdentityCase(
        "ex3.3", "3", "reduced-halfline",
        _ts_scaled(_quad.reduce_thm31(1, 1, 1, v=mp.mpf("0.5")),
                   mp.mpf(1) / 8),
        _expr(lambda wp: mp.pi ** 2 / 12)))

    # (-ln xy)^n / (1 - xyz): polylogarithm targets.
    for cid, n, z, rhs in (
        ("cor3.1@n=0,z=1", 0, 1, _expr(lambda wp: mp.pi ** 2 / 6)),
        ("cor3.1@n=1,z=-1", 1, -1,
         _expr(lambda wp: mp.mpf(3) / 2 * oracles.constant("apery", wp))),
        ("cor3.1@n=2,z=0.5", 2, mp.mpf("0.5"),
         _expr(lambda wp: 12 * _li(4, mp.mpf("0.5"), wp))),
    ):
        zz = mp.mpmathify(z)
        nn = n
        add(IdentityCase(
            cid, "3", "product-kernel",
            _pk(lambda X, Xc, zz=zz, nn=nn:
                nl(X, Xc) ** nn / (Xc if zz == 1 else 1 - X * zz)),
            rhs))
    # -1/((1-xyz) ln xy): -ln(1-z)/z.
    for cid, z, rhs in (
        ("cor3.1b@z=0.5", mp.mpf("0.5"), _expr(lambda wp: 2 * mp.log(2))),
        ("cor3.1b@z=-1", -1, _expr(lambda wp: mp.log(2))),
    ):
        zz = mp.mpmathify(z)
        add(IdentityCase(
            cid, "3", "product-kernel",
            _pk(lambda X, Xc, zz=zz: 1 / ((1 - X * zz) * nl(X, Xc))),
            rhs))

    add(IdentityCase(
        "ex3.4a", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / ((2 - X) * nl(X, Xc))),
        _expr(lambda wp: mp.log(2)), tol="1e-10"))
    add(IdentityCase(
        "ex3.4b", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / (2 - X)),
        _expr(lambda wp: mp.pi ** 2 / 12 - mp.log(2) ** 2 / 2),
        lhs2d=lambda x, y, xc, yc: 1 / (2 - x * y)))
    add(IdentityCase(
        "ex3.4c", "3", "product-kernel",
        _pk(lambda X, Xc: nl(X, Xc) / (2 - X)),
        _expr(lambda wp: 7 * oracles.constant("apery", wp) / 4
              - mp.pi ** 2 * mp.log(2) / 6 + mp.log(2) ** 3 / 3)))

    # golden-ratio denominators
    def _phi_cases():
        out = []
        specs = [
            ("ex3.5a", lambda X, Xc, g: 1 / ((g - X) * nl(X, Xc)),
             lambda wp, g: 2 * mp.log(g), None),
            ("ex3.5b", lambda X, Xc, g: 1 / (g - X),
             lambda wp, g: mp.pi ** 2 / 10 - mp.log(g) ** 2,
             lambda x, y, xc, yc, g: 1 / (g - x * y)),
            ("ex3.5c", lambda X, Xc, g: 1 / ((g * g - X) * nl(X, Xc)),
             lambda wp, g: mp.log(g), None),
            ("ex3.5d", lambda X, Xc, g: 1 / (g * g - X),
             lambda wp, g: mp.pi ** 2 / 15 - mp.log(g) ** 2,
             lambda x, y, xc, yc, g: 1 / (g * g - x * y)),
            ("ex3.5e", lambda X, Xc, g: 1 / ((1 + g * X) * nl(X, Xc)),
             lambda wp, g: 2 * mp.log(g) / g, None),
            ("ex3.5f", lambda X, Xc, g: 1 / (1 + g * X),
             lambda wp, g: mp.pi ** 2 / (10 * g) + mp.log(g) ** 2 / g,
             lambda x, y, xc, yc, g: 1 / (1 + g * x * y)),
            ("ex3.5g", lambda X, Xc, g: 1 / ((g + X) * nl(X, Xc)),
             lambda wp, g: mp.log(g), None),
            ("ex3.5h", lambda X, Xc, g: 1 / (g + X),
             lambda wp, g: mp.pi ** 2 / 15 - mp.log(g) ** 2 / 2,
             lambda x, y, xc, yc, g: 1 / (g + x * y)),
            ("ex3.5i", lambda X, Xc, g: nl(X, Xc) / (g * g - X),
             lambda wp, g: (8 * oracles.constant("apery", wp) / 5
                            - 4 * mp.pi ** 2 * mp.log(g) / 15
                            + 4 * mp.log(g) ** 3 / 3), None),
        ]
        for cid, g_fn, rhs_fn, f2 in specs:
            def lhs(p, tol, g_fn=g_fn):
                with guarded_prec(p, 16):
                    g = _golden(mp.mp.prec)
                est = _quad.tanh_sinh(_quad.product_kernel_reduce(
                    lambda X, Xc: g_fn(X, Xc, g)), p, tol)
                return est

            def rhs(p, rhs_fn=rhs_fn):
                with guarded_prec(p, 16):
                    wp = mp.mp.prec
                    return _round_to(rhs_fn(wp, _golden(wp)), p)

            lhs2d = None
            if f2 is not None:
                def lhs2d(x, y, xc, yc, f2=f2):
                    return f2(x, y, xc, yc, _golden(mp.mp.prec))
            out.append(IdentityCase(cid, "3", "product-kernel", lhs, rhs,
                                    lhs2d=lhs2d))
        return out

    cases.extend(_phi_cases())

    add(IdentityCase(
        "ex3.6a", "3", "product-kernel",
        _pk(lambda X, Xc: (1 - 2 * X) / ((8 + X) * (9 - X))),
        _expr(lambda wp: mp.log(mp.mpf(9) / 8) ** 2 / 2),
        lhs2d=lambda x, y, xc, yc: (1 - 2 * x * y) / ((8 + x * y) * (9 - x * y))))
    add(IdentityCase(
        "ex3.6b", "3", "product-kernel",
        _pk(lambda X, Xc: (52 - 7 * X) / ((2 + X) * (9 - X))),
        _expr(lambda wp: mp.pi ** 2 / 3 + 3 * mp.log(2) ** 2
              + 2 * mp.log(3) ** 2 - 6 * mp.log(2) * mp.log(3)),
        lhs2d=lambda x, y, xc, yc: (52 - 7 * x * y) / ((2 + x * y) * (9 - x * y))))
    add(IdentityCase(
        "ex3.6c", "3", "product-kernel",
        _pk(lambda X, Xc: (9 + X) / (9 - X * X)),
        _expr(lambda wp: mp.pi ** 2 / 6 - mp.log(3) ** 2 / 2),
        lhs2d=lambda x, y, xc, yc: (9 + x * y) / (9 - (x * y) ** 2)))

    add(IdentityCase(
        "ex3.7", "3", "product-kernel",
        _pk(lambda X, Xc: ((4 + 2 * X + X * X) * (4 - 8 * X + X * X)
                           / (64 - X ** 6))),
        _expr(lambda wp: mp.pi ** 2 / 72),
        lhs2d=lambda x, y, xc, yc: ((4 + 2 * x * y + (x * y) ** 2)
                                    * (4 - 8 * x * y + (x * y) ** 2)
                                    / (64 - (x * y) ** 6))))

    # (-ln xy)^s against 1 -+ xy and 1 + x^2 y^2: zeta-family targets.
    for cid, s, g_den, rhs in (
        ("cor3.2-eq31@s=0.5", mp.mpf("0.5"), lambda X, Xc: Xc,
         _expr(lambda wp: oracles.gamma(mp.mpf("2.5"), wp)
               * mp.mpmathify(special.zeta(mp.mpf("2.5"), wp).value))),
        ("cor3.2-eq31@s=2", 2, lambda X, Xc: Xc,
         _expr(lambda wp: 6 * mp.mpmathify(special.zeta(4, wp).value))),
        ("cor3.2-eq32@s=-1.5", mp.mpf("-1.5"), lambda X, Xc: 1 + X,
         _expr(lambda wp: oracles.gamma(mp.mpf("0.5"), wp)
               * mp.mpmathify(special.zeta_star(mp.mpf("0.5"), wp).value))),
        ("cor3.2-eq33@s=0.5", mp.mpf("0.5"), lambda X, Xc: 1 + X * X,
         _expr(lambda wp: oracles.gamma(mp.mpf("2.5"), wp)
               * mp.mpmathify(special.beta_dirichlet(mp.mpf("2.5"), wp).value))),
    ):
        ss = mp.mpmathify(s)
        add(IdentityCase(
            cid, "3", "product-kernel",
            _pk(lambda X, Xc, ss=ss, g_den=g_den:
                mp.power(nl(X, Xc), ss) / g_den(X, Xc)),
            rhs))

    add(IdentityCase(
        "ex3.8a", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / Xc),
        _expr(lambda wp: mp.pi ** 2 / 6),
        lhs2d=lambda x, y, xc, yc: 1 / xy_c(xc, yc)))
    add(IdentityCase(
        "ex3.8b", "3", "product-kernel",
        _pk(lambda X, Xc: nl(X, Xc) / Xc),
        _expr(lambda wp: 2 * oracles.constant("apery", wp)),
        lhs2d=lambda x, y, xc, yc: -mp.log(x * y) / xy_c(xc, yc)))

    add(IdentityCase(
        "ex3.9a", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / ((1 + X * X) * nl(X, Xc))),
        _expr(lambda wp: mp.pi / 4)))
    add(IdentityCase(
        "ex3.9b", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / (1 + X * X)),
        _const("catalan"),
        lhs2d=lambda x, y, xc, yc: 1 / (1 + (x * y) ** 2)))
    add(IdentityCase(
        "ex3.9c", "3", "product-kernel",
        _pk(lambda X, Xc: nl(X, Xc) / (1 + X * X)),
        _expr(lambda wp: mp.pi ** 3 / 16),
        lhs2d=lambda x, y, xc, yc: -mp.log(x * y) / (1 + (x * y) ** 2)))

    # Legendre chi targets: 1/(1 - x^2 y^2 z^2).
    for cid, s, z in (("cor3.3@s=0,z=0.5", 0, mp.mpf("0.5")),
                      ("cor3.3@s=1,z=0.5", 1, mp.mpf("0.5"))):
        ss, zz = mp.mpmathify(s), mp.mpmathify(z)
        add(IdentityCase(
            cid, "3", "product-kernel",
            _pk(lambda X, Xc, ss=ss, zz=zz:
                mp.power(nl(X, Xc), ss) / (1 - X * X * zz * zz)),
            _expr(lambda wp, ss=ss, zz=zz:
                  oracles.gamma(ss + 2, wp)
                  * mp.mpmathify(special.chi(ss + 2, zz, wp).value) / zz)))

    add(IdentityCase(
        "ex3.11a", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / (1 - X * X * (mp.sqrt(2) - 1) ** 2)),
        _expr(lambda wp: (mp.pi ** 2 / (16 * (mp.sqrt(2) - 1))
                          - mp.log(mp.sqrt(2) - 1) ** 2 / (4 * (mp.sqrt(2) - 1)))),
        lhs2d=lambda x, y, xc, yc: 1 / (1 - (x * y) ** 2 * (mp.sqrt(2) - 1) ** 2)))
    add(IdentityCase(
        "ex3.11b", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / (mp.mpf(9) + 4 * mp.sqrt(5) - X * X)),
        _expr(lambda wp: (mp.pi ** 2 / (24 * _golden(wp) ** 3)
                          - 3 * mp.log(_golden(wp)) ** 2 / (4 * _golden(wp) ** 3))),
        # golden_ratio^6 = 9 + 4 sqrt(5)
        lhs2d=lambda x, y, xc, yc: 1 / (mp.mpf(9) + 4 * mp.sqrt(5) - (x * y) ** 2)))

    # log-denominator family: values are dPhi/ds differences.
    add(IdentityCase(
        "cor3.4-35@z=-1/3", "3", "reduced-1d-finite",
        _ts(_log_denom(mp.mpf(-1) / 3, 2, 1)),
        _expr(lambda wp: (mp.mpmathify(deriv.dphi_ds_negz(0, mp.mpf(-1) / 3, 1, wp).value)
                          - mp.mpmathify(deriv.dphi_ds_negz(0, mp.mpf(-1) / 3, 2, wp).value)))))
    add(IdentityCase(
        "cor3.4-36@z=0.5,u=3", "3", "product-kernel",
        _pk(lambda X, Xc: X * X / ((1 - X / 2) * nl(X, Xc))),
        _phi_rhs(mp.mpf("0.5"), 1, 3)))

    add(IdentityCase(
        "ex3.12a", "3", "reduced-1d-finite",
        _ts(_log_denom(0, 3, 1)),
        _expr(lambda wp: mp.log(3) / 2)))
    add(IdentityCase(
        "ex3.12b", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(0, -1, mp.mpf("1.5"))),
        _expr(lambda wp: mp.mpf(2) / 3)))

    add(IdentityCase(
        "ex3.13", "3", "reduced-1d-finite",
        _ts_scaled(_log_denom(mp.mpf("0.5"), 2, 1), mp.mpf("0.5")),
        _expr(lambda wp: mp.log(oracles.constant("somos_sigma", wp)))))

    add(IdentityCase(
        "cor3.5-38@u=2,v=1", "3", "reduced-1d-finite",
        _ts(_log_denom(-1, 2, 1)),
        _expr(lambda wp: mp.log(mp.pi / 2))))
    add(IdentityCase(
        "cor3.5-39@u=1", "3", "product-kernel",
        _pk(lambda X, Xc: 1 / ((1 + X) * nl(X, Xc))),
        _expr(lambda wp: (oracles.digamma(1, wp) - oracles.digamma(mp.mpf("0.5"), wp)) / 2)))

    # ln pi and ln(4/pi): sum and difference of the two integrands above.
    def _mixed(sign):
        def f(x, xc):
            base = 1 / (1 + x)
            two_param = xc / ((1 + x) * nl(x, xc))
            return base + sign * two_param
        return _fin(f, name=f"one-plus-minus-x(sign={sign})")

    add(IdentityCase("ex3.14a", "3", "reduced-1d-finite", _ts(_mixed(+1)),
                     _expr(lambda wp: mp.log(mp.pi))))
    add(IdentityCase("ex3.14b", "3", "reduced-1d-finite", _ts(_mixed(-1)),
                     _expr(lambda wp: mp.log(4 / mp.pi))))

    add(IdentityCase(
        "ex3.15", "3", "reduced-1d-finite",
        _ts_scaled(_log_denom(-1, 1, mp.mpf("0.5")), mp.mpf("0.5")),
        _expr(lambda wp: (mp.log(2 * mp.pi) / 2
                          - 2 * oracles.log_gamma(mp.mpf("0.75"), wp)))))

    add(IdentityCase(
        "cor3.6-40@u=1,v=0.5", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(1, 0, 1, v=mp.mpf("0.5"))),
        _expr(lambda wp: 4 * mp.log(2))))
    add(IdentityCase(
        "cor3.6-41@u=1.5", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(1, 0, mp.mpf("1.5"))),
        _expr(lambda wp: oracles.trigamma(mp.mpf("1.5"), wp))))
    add(IdentityCase(
        "ex3.16", "3", "reduced-halfline",
        _ts_scaled(_quad.reduce_thm31(1, 0, mp.mpf(1) / 3, v=mp.mpf(2) / 3),
                   mp.mpf(1) / 9),
        _expr(lambda wp: mp.pi / (3 * mp.sqrt(3)))))
    add(IdentityCase(
        "ex3.17", "3", "reduced-halfline",
        _ts_scaled(_quad.reduce_thm31(1, 0, mp.mpf("0.5")), mp.mpf("0.25")),
        _expr(lambda wp: mp.pi ** 2 / 8),
        lhs2d=lambda x, y, xc, yc: mp.mpf(1) / (xy_c(xc, yc) * (1 + x * y))))

    # z = 0: pure Gamma targets.
    add(IdentityCase(
        "cor3.7-43@s=1,u=2,v=1", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(0, 1, 2, v=1)),
        _expr(lambda wp: mp.mpf(3) / 4)))
    add(IdentityCase(
        "cor3.7-44@s=0.5,u=3", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(0, mp.mpf("0.5"), 3)),
        _expr(lambda wp: oracles.gamma(mp.mpf("2.5"), wp)
              * real_power(3, mp.mpf("2.5")))))
    add(IdentityCase(
        "ex3.18", "3", "reduced-1d-finite",
        _ts(_th31_finite(0, mp.mpf("-1.5"), 2, 1)),
        _expr(lambda wp: 2 * (mp.sqrt(2) - 1) * mp.sqrt(mp.pi))))
    add(IdentityCase(
        "ex3.19a", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(0, mp.mpf("-1.5"), 1)),
        _expr(lambda wp: mp.sqrt(mp.pi))))
    add(IdentityCase(
        "ex3.19b", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(0, mp.mpf("-1.25"), 1)),
        _expr(lambda wp: oracles.gamma(mp.mpf("0.75"), wp))))

    # squared denominators.
    add(IdentityCase(
        "cor3.8-46@z=0.5,s=1,u=1", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(mp.mpf("0.5"), 1, 1, denom_power=2)),
        _phi_rhs(mp.mpf("0.5"), 2, 1, factor=2)))
    add(IdentityCase(
        "ex3.20", "3", "reduced-halfline",
        _ts_scaled(_quad.reduce_thm31(-1, 2, mp.mpf("0.5"), v=1, denom_power=2),
                   mp.mpf(1) / 16),
        _expr(lambda wp: oracles.constant("catalan", wp)
              - mp.pi ** 2 / 48 + mp.pi ** 3 / 32)))
    add(IdentityCase(
        "ex3.21", "3", "reduced-halfline",
        _ts(_quad.reduce_thm31(-1, 4, 1, denom_power=2)),
        _expr(lambda wp: mp.mpf(225) / 2
              * mp.mpmathify(special.zeta(5, wp).value))))
    add(IdentityCase(
        "ex3.22", "3", "reduced-halfline",
        _ts_scaled(_quad.reduce_thm31(-1, -1, mp.mpf("0.5"), denom_power=2),
                   mp.mpf("0.5")),
        _expr(lambda wp: (mp.pi + 2) / 8)))

    add(IdentityCase(
        "ex3.23", "3", "reduced-1d-finite",
        _ts(_log_denom(-1, 2, 1, d=2)),
        _expr(lambda wp: (6 * mp.log(oracles.constant("glaisher", wp))
                          - mp.log(2) / 6 - mp.log(mp.pi) / 2
                          - mp.mpf(1) / 2))))

    def _ex324(x, xc):
        return (1 - x * x) / (2 * (1 + x * x) ** 2 * nl(x, xc))

    add(IdentityCase(
        "ex3.24", "3", "reduced-1d-finite",
        _ts(_fin(_ex324)),
        _expr(lambda wp: oracles.constant("catalan", wp) / mp.pi)))

    # harmonic-number series identity.
    def _lemma31(z):
        zz = mp.mpmathify(z)

        def lhs(p, tol):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                tol = mp.mpf(tol)
                total = mp.mpf(0)
                zn = mp.mpf(1)
                h1 = mp.mpf(0)
                h2 = mp.mpf(0)
                n = 0
                while True:
                    n += 1
                    h1 += mp.mpf(1) / n
                    h2 += mp.mpf(1) / n ** 2
                    zn *= zz
                    term = (h2 / n + 2 * h1 / n ** 2) * zn
                    total += term
                    if abs(term) < tol * max(abs(total), mp.mpf(1)) and n > 8:
                        break
                    if n > 200000:
                        raise lerch.NonConvergenceError("series cap")
                err = abs(term) * abs(zz) / (1 - abs(zz))
            return Approx(_round_to(total, p), _round_to(err, p),
                          "HARMONIC_SERIES", terms_used=n, precision_used=p)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                return _round_to(3 * _li(3, zz, wp)
                                 - _li(2, zz, wp) * mp.log(1 - zz), p)

        return lhs, rhs

    for z in (mp.mpf("0.5"), mp.mpf("-0.7")):
        lhs, rhs = _lemma31(z)
        add(IdentityCase(f"lemma3.1@z={mp.nstr(z, 3)}", "3", "series",
                         lhs, rhs))

    # -ln(1 - xz) and -ln(1 - xyz) against 1/(1 - xy).
    def _eq48_lhs(z):
        zz = mp.mpmathify(z)

        def f(x, xc):
            return -mp.log1p(-x * zz) * (-mp.log(xc)) / x

        return _ts(_fin(f, name=f"eq48(z={zz})"))

    def _eq48_rhs(z):
        zz = mp.mpmathify(z)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                w = 1 - zz
                val = ((mp.log(zz) * mp.log(w) / 2 + _li(2, w, wp)) * mp.log(w)
                       + _li(3, zz, wp) - _li(3, w, wp)
                       + oracles.constant("apery", wp))
                return _round_to(val, p)
        return rhs

    def _eq49_rhs(z):
        zz = mp.mpmathify(z)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                w = 1 - zz
                val = (_li(2, w, wp) * mp.log(w) - _li(3, zz, wp)
                       - 2 * _li(3, w, wp) + 2 * oracles.constant("apery", wp))
                return _round_to(val, p)
        return rhs

    for z in (mp.mpf("0.5"), mp.mpf("0.3")):
        add(IdentityCase(f"thm3.2-eq48@z={mp.nstr(z, 3)}", "3",
                         "reduced-1d-finite", _eq48_lhs(z), _eq48_rhs(z)))
        zz = mp.mpmathify(z)
        add(IdentityCase(
            f"thm3.2-eq49@z={mp.nstr(z, 3)}", "3", "product-kernel",
            _pk(lambda X, Xc, zz=zz: -mp.log1p(-X * zz) / Xc),
            _eq49_rhs(z)))

    add(IdentityCase(
        "ex3.25a", "3", "product-kernel",
        _pk(lambda X, Xc: mp.log1p(X) / Xc),
        _expr(lambda wp: mp.pi ** 2 * mp.log(2) / 4
              - oracles.constant("apery", wp)),
        lhs2d=lambda x, y, xc, yc: mp.log1p(x * y) / xy_c(xc, yc)))
    add(IdentityCase(
        "ex3.25b", "3", "product-kernel",
        _pk(lambda X, Xc: mp.log(2 - X) / Xc),
        _expr(lambda wp: mp.mpf(5) / 8 * oracles.constant("apery", wp)),
        lhs2d=lambda x, y, xc, yc: mp.log(2 - x * y) / xy_c(xc, yc)))

    def _ex326a(x, xc):
        return mp.log(xc) ** 2 / x

    add(IdentityCase(
        "ex3.26a", "3", "reduced-1d-finite", _ts(_fin(_ex326a)),
        _expr(lambda wp: 2 * oracles.constant("apery", wp))))
    add(IdentityCase(
        "ex3.26b", "3", "product-kernel",
        _pk(lambda X, Xc: -mp.log(Xc) / Xc),
        _const("apery"),
        lhs2d=lambda x, y, xc, yc: -mp.log(xy_c(xc, yc)) / xy_c(xc, yc)))

    # ------------------------------------------------------------------ #4
    def _thm41_rhs(z, s, u):
        zz, ss, uu = mp.mpmathify(z), mp.mpmathify(s), mp.mpf(u)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                g2 = oracles.gamma(ss + 2, wp)
                phi2 = mp.mpmathify(lerch.phi_auto(zz, ss + 2, uu, wp).value)
                upow = real_power(uu, ss + 1)
                if zz == 1:
                    # the (1-z) Phi(z, s+1, u) term vanishes; skipping it also
                    # avoids touching the z=1 pole when s+1 = 1
                    val = g2 * (phi2 - upow / (ss + 1))
                else:
                    phi1 = mp.mpmathify(lerch.phi_auto(zz, ss + 1, uu, wp).value)
                    val = g2 * (phi2 + ((1 - zz) * phi1 - upow) / (zz * (ss + 1)))
                return _round_to(val, p)
        return rhs

    # 9 combinations spanning z in {-1, 1/2, 1}, s in {-1/2, 0, 1},
    # u in {1/2, 1, 2} (a Latin square: each value of each set appears 3x)
    half = mp.mpf("0.5")
    for z, s, u in ((-1, -half, half), (-1, 0, 1), (-1, 1, 2),
                    (half, -half, 1), (half, 0, 2), (half, 1, half),
                    (1, -half, 2), (1, 0, half), (1, 1, 1)):
        zid = mp.nstr(mp.mpf(z), 3)
        add(IdentityCase(
            f"thm4.1@z={zid},s={mp.nstr(mp.mpf(s), 3)},u={mp.nstr(mp.mpf(u), 3)}",
            "4", "reduced-halfline",
            _ts(_quad.hadjicostas_integrand(z, s, u)),
            _thm41_rhs(z, s, u)))

    add(IdentityCase(
        "ex4.1@s=-1.5", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(1, mp.mpf("-1.5"), 1)),
        _expr(lambda wp: oracles.gamma(mp.mpf("0.5"), wp)
              * (mp.mpmathify(special.zeta(mp.mpf("0.5"), wp).value) + 2))))
    add(IdentityCase(
        "ex4.2@s=-2.5", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(-1, mp.mpf("-2.5"), 1)),
        _expr(lambda wp: oracles.gamma(mp.mpf("-0.5"), wp)
              * (mp.mpmathify(special.zeta_star(mp.mpf("-0.5"), wp).value)
                 + (1 - 2 * mp.mpmathify(special.zeta_star(mp.mpf("-1.5"), wp).value))
                 / mp.mpf("-1.5")))))

    for u in (mp.mpf("0.5"), 1, 3):
        uu = mp.mpf(u)
        cid = "ex4.4" if uu == 1 else f"cor4.1@u={mp.nstr(uu, 3)}"
        add(IdentityCase(
            cid, "4", "reduced-halfline",
            _ts(_quad.hadjicostas_integrand(1, -1, uu)),
            _expr(lambda wp, uu=uu: mp.log(uu) - oracles.digamma(uu, wp))))

    def _cor42_rhs(z, u):
        zz, uu = mp.mpmathify(z), mp.mpf(u)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                d0 = mp.mpmathify(deriv.dphi_ds_negz(0, zz, uu, wp).value)
                d1 = mp.mpmathify(deriv.dphi_ds_negz(1, zz, uu, wp).value)
                ulnu = uu * mp.log(uu)
                val = d0 + ((zz - 1) * d1 - ulnu) / zz + 1 / (zz - 1)
                return _round_to(val, p)
        return rhs

    add(IdentityCase(
        "cor4.2@z=-1,u=1", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(-1, -2, 1)),
        _cor42_rhs(-1, 1)))
    add(IdentityCase(
        "cor4.2@z=1/3,u=1", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(mp.mpf(1) / 3, -2, 1)),
        _cor42_rhs(mp.mpf(1) / 3, 1)))

    add(IdentityCase(
        "ex4.5", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(-1, -2, mp.mpf("0.5"))),
        _expr(lambda wp: (oracles.log_gamma(mp.mpf("0.25"), wp) - mp.log(2)
                          - oracles.log_gamma(mp.mpf("0.75"), wp)
                          + 2 * oracles.constant("catalan", wp) / mp.pi
                          - mp.mpf("0.5")))))

    for u in (1, mp.mpf("0.5")):
        uu = mp.mpf(u)
        add(IdentityCase(
            f"ex4.6@u={mp.nstr(uu, 3)}", "4", "reduced-halfline",
            _ts(_quad.hadjicostas_integrand(0, -2, uu)),
            _expr(lambda wp, uu=uu: (uu + 1) * mp.log(1 + 1 / uu) - 1)))

    def _cor43_rhs(s, u):
        ss, uu = mp.mpmathify(s), mp.mpf(u)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                val = oracles.gamma(ss + 1, wp) * (
                    (ss + 1 - uu) * real_power(uu, ss + 2)
                    + real_power(uu + 1, ss + 1))
                return _round_to(val, p)
        return rhs

    add(IdentityCase(
        "cor4.3@s=0.5,u=2", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(0, mp.mpf("0.5"), 2)),
        _cor43_rhs(mp.mpf("0.5"), 2)))
    add(IdentityCase(
        "ex4.7", "4", "reduced-halfline",
        _ts(_quad.hadjicostas_integrand(0, mp.mpf("-2.5"), 1)),
        _expr(lambda wp: mp.sqrt(mp.pi) / 3 * (8 * mp.sqrt(2) - 10))))

    # ------------------------------------------------------------------ #2
    # Semi-infinite average of Phi(-z, s, u) against 1/(1+z).
    def _cor21(s, u):
        ss, uu = mp.mpmathify(s), mp.mpf(u)

        def lhs(p, tol):
            # every node costs a full Phi evaluation, so cap the working
            # precision; the case tolerance (1e-8) needs far less than p bits
            pe = min(p, 64)

            def f(t):
                inner = lerch.phi_auto(-t, ss, uu, pe + 16, mp.mpf(tol) / 4)
                return mp.mpmathify(inner.value) / (1 + t)
            return _quad.tanh_sinh(
                _quad.Integrand1D(f, 0, mp.inf, name="phi-average"), pe, tol)

        def rhs(p):
            with guarded_prec(p, 16):
                wp = mp.mp.prec
                return _round_to(
                    ss * mp.mpmathify(lerch.phi_hasse(ss + 1, uu, wp).value), p)

        return lhs, rhs

    for s, u in ((2, 1), (mp.mpf("0.5"), mp.mpf("1.5"))):
        lhs, rhs = _cor21(s, u)
        add(IdentityCase(
            f"cor2.1@s={mp.nstr(mp.mpf(s), 3)},u={mp.nstr(mp.mpf(u), 3)}",
            "2", "exp-sinh", lhs, rhs, tol="1e-8", slow=True))

    # x^(u-1)(1-x)^n/(-ln x): alternating binomial log sums.
    for n in (1, 2, 5):
        for u in (1, mp.mpf("0.5"), mp.pi):
            uu = mp.mpf(u)
            add(IdentityCase(
                f"eq57@n={n},u={mp.nstr(uu, 4)}", "2", "reduced-halfline",
                _ts(_quad.eq57_integrand(n, uu)),
                _expr(lambda wp, n=n, uu=uu:
                      mp.mpmathify(fdiff_log_sum(n, uu, 1, wp).value))))

    cases.sort(key=lambda c: c.id)
    return cases


def identity_registry() -> List[IdentityCase]:
    """All registered identity cases, ordered lexicographically by id."""
    global _REGISTRY_CACHE
    if _REGISTRY_CACHE is None:
        _REGISTRY_CACHE = _build()
    return list(_REGISTRY_CACHE)


def get_case(case_id: str) -> IdentityCase:
    for c in identity_registry():
        if c.id == case_id:
            return c
    raise KeyError(case_id)


def filter_cases(pattern: Optional[str] = None,
                 section: Optional[str] = None) -> List[IdentityCase]:
    out = identity_registry()
    if pattern:
        out = [c for c in out if fnmatch.fnmatchcase(c.id, pattern)]
    if section:
        out = [c for c in out if c.section == section]
    return out


def verify(case: IdentityCase, p: int = 132) -> Dict:
    """Evaluate both sides of one case and compare.

    pass iff |lhs - rhs| <= tol + combined reported errors.  Evaluation
    failures are captured into the record as failures with a reason.
    """
    t0 = time.monotonic()
    tol = mp.mpf(case.tol)
    record = {"id": case.id, "tol": case.tol, "route": case.route}
    try:
        qtol = max(tol / 64, mp.mpf(2) ** (-p + 8))
        lhs = case.lhs(p, qtol)
        rhs_val = case.rhs(p)
        abs_err = abs(mp.mpmathify(lhs.value) - mp.mpmathify(rhs_val))
        record.update({
            "lhs": mp.nstr(lhs.value, 30),
            "rhs": mp.nstr(rhs_val, 30),
            "abs_err": mp.nstr(abs_err, 10),
            "pass": bool(abs_err <= tol + lhs.err),
        })
    except Exception as exc:  # captured into the record, not raised
        record.update({"lhs": "", "rhs": "", "abs_err": "",
                       "pass": False, "reason": f"{type(exc).__name__}: {exc}"})
    record["seconds"] = round(time.monotonic() - t0, 3)
    return record


def _verify_by_id(case_id: str, p: int) -> Dict:
    # worker-side entry point: cases hold closures, so ship ids instead
    return verify(get_case(case_id), p)


def verify_many(cases: List[IdentityCase], p: int = 132,
                jobs: int = 1) -> List[Dict]:
    """Verify a list of cases (optionally in parallel); records come back
    ordered lexicographically by id regardless of completion order."""
    if jobs > 1:
        import concurrent.futures as cf
        with cf.ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = {ex.submit(_verify_by_id, c.id, p): c.id for c in cases}
            recs = [f.result() for f in cf.as_completed(futs)]
    else:
        recs = [verify(c, p) for c in cases]
    recs.sort(key=lambda r: r["id"])
    return recs
