"""Command-line front end.

Subcommands:
  eval      compute Phi(z, s, u) to the requested number of digits
  constant  print a named constant with an optional partial-product trajectory
  verify    run the identity registry and report pass/fail per case

Exit codes: 0 success (all cases pass for verify), 1 verification failures,
2 usage/parse/domain errors.
"""
from __future__ import annotations

import argparse
import fnmatch
import json
import math
import os
import re
import sys
from typing import List, Optional

import mpmath as mp

from . import identities, oracles, special
from .core import Approx, LerchkitError, UnknownKeyError
from .lerch import phi_auto

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

#: constants reachable through an independent summation route (not the oracle)
_SERIES_ROUTES = {
    "pi": lambda p: 4 * special.beta_dirichlet(1, p).value,
    "catalan": lambda p: special.beta_dirichlet(2, p).value,
    "apery": lambda p: special.zeta(3, p).value,
    "ln2": lambda p: special.zeta_star(1, p).value,
    "gamma": lambda p: -special.digamma_series(1, p).value,
}


class CliError(Exception):
    """Usage-level failure; maps to exit code 2."""


def _precision_bits(args) -> int:
    """Working precision: explicit bits win, else env override, else digits."""
    if getattr(args, "precision_bits", None):
        return int(args.precision_bits)
    env = os.environ.get("LERCHKIT_PRECISION_BITS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise CliError(f"LERCHKIT_PRECISION_BITS must be an integer: {exc}")
    return int(math.ceil(args.digits * math.log2(10))) + 32


def _parse_number(text: str, p: int, what: str):
    """Decimal string with an optional imaginary part, e.g. '0.5' or '1+2j'."""
    with mp.workprec(p + 16):
        try:
            val = mp.mpmathify(text.strip())
        except (ValueError, TypeError):
            raise CliError(f"could not parse {what}={text!r} as a number")
    return val


def _jobs(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, int(args.jobs))
    env = os.environ.get("LERCHKIT_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise CliError(f"LERCHKIT_JOBS must be an integer: {exc}")
    return 1


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args) -> int:
    p = _precision_bits(args)
    z = _parse_number(args.z, p, "z")
    s = _parse_number(args.s, p, "s")
    u = _parse_number(args.u, p, "u")
    if mp.im(u) != 0 or mp.re(u) <= 0:
        raise CliError(f"u must be a positive real (got u={args.z!r} -> {u})")
    est = phi_auto(z, s, u, p)
    d = args.digits
    print(f"value (re) = {mp.nstr(mp.re(est.value), d)}")
    print(f"value (im) = {mp.nstr(mp.im(est.value), d)}")
    print(f"err        = {mp.nstr(mp.mpf(est.err), 5)}")
    print(f"method     = {est.method}")
    print(f"terms      = {est.terms_used}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# constant


def _trajectory_points(N: int) -> List[int]:
    pts = []
    n = 8
    while n < N:
        pts.append(n)
        n *= 2
    pts.append(N)
    return pts


def cmd_constant(args) -> int:
    p = _precision_bits(args)
    d = args.digits
    try:
        target = oracles.constant(args.name, p)
    except UnknownKeyError:
        raise CliError(
            f"unknown constant {args.name!r}; known: {', '.join(oracles.CONSTANT_NAMES)}")
    print(f"oracle     = {mp.nstr(target, d)}")
    method = args.method
    if method == "oracle":
        return EXIT_OK
    if method == "series":
        route = _SERIES_ROUTES.get(args.name)
        if route is None:
            raise CliError(f"no series route registered for {args.name!r}")
        with mp.workprec(p + 16):
            val = route(p)
            diff = abs(val - target)
        print(f"series     = {mp.nstr(val, d)}")
        print(f"|diff|     = {mp.nstr(diff, 5)}")
        return EXIT_OK
    if method.startswith("product:"):
        pid = method.split(":", 1)[1]
        spec = special.PRODUCTS.get(pid)
        if spec is None:
            raise CliError(
                f"unknown product id {pid!r}; known: {', '.join(sorted(special.PRODUCTS))}")
        prod_target = special.product_target(spec, p)
        if mp.nstr(prod_target, d) != mp.nstr(target, d):
            # the product may converge to a derived expression (e.g. pi/2)
            print(f"product -> = {mp.nstr(prod_target, d)}  ({spec.name})")
        pairs = special.product_partials(spec, _trajectory_points(args.N), p)
        print(f"{'N':>6}  {'partial':<{d + 8}}  |partial-target|")
        for n, val in pairs:
            print(f"{n:>6}  {mp.nstr(val, d):<{d + 8}}  "
                  f"{mp.nstr(abs(val - prod_target), 5)}")
        return EXIT_OK
    raise CliError(f"unknown method {method!r}; use oracle, series, or product:<id>")


# ---------------------------------------------------------------------------
# verify


def _forced_failure_case() -> identities.IdentityCase:
    """Hidden case with an impossible tolerance, for exit-code testing."""
    return identities.IdentityCase(
        id="zz-forced-failure", section="0", route="injected",
        lhs=lambda p, tol: Approx(mp.mpf(1), mp.mpf(0), "INJECTED"),
        rhs=lambda p: mp.mpf(1) + mp.mpf("1e-6"), tol="1e-300")


def _json_report(recs) -> str:
    cases = []
    for r in recs:
        cases.append({
            "id": r["id"],
            "lhs": r.get("lhs", ""),
            "rhs": r.get("rhs", ""),
            "abs_err": r.get("abs_err", ""),
            "tol": r["tol"],
            "pass": bool(r["pass"]),
            # zeroed: wall time is inherently non-deterministic and the
            # report is required to be byte-identical across runs
            "seconds": "0",
            "route": r["route"],
        })
    passed = sum(1 for r in recs if r["pass"])
    report = {
        "schema_version": "1",
        "cases": cases,
        "summary": {"total": len(recs), "passed": passed,
                    "failed": len(recs) - passed, "seconds": "0"},
    }
    return json.dumps(report, indent=2)


def cmd_verify(args) -> int:
    p = _precision_bits(args)
    pattern = args.filter
    if pattern is not None:
        try:
            re.compile(fnmatch.translate(pattern))
        except re.error as exc:
            raise CliError(f"bad filter pattern {pattern!r}: {exc}")
    cases = identities.filter_cases(pattern=pattern)
    if os.environ.get("LERCHKIT_FORCE_FAIL"):
        cases = cases + [_forced_failure_case()]
    recs = identities.verify_many(cases, p, jobs=_jobs(args))
    total_seconds = sum(r.get("seconds", 0) for r in recs)
    if args.format == "json":
        print(_json_report(recs))
    else:
        for r in recs:
            status = "PASS" if r["pass"] else "FAIL"
            extra = (f"abs_err={r['abs_err']}" if r.get("abs_err")
                     else r.get("reason", ""))
            print(f"{status}  {r['id']:<34} tol={r['tol']:<8} {extra} "
                  f"({r['seconds']}s, {r['route']})")
        passed = sum(1 for r in recs if r["pass"])
        print(f"{passed}/{len(recs)} passed in {total_seconds:.1f}s")
    return EXIT_OK if all(r["pass"] for r in recs) else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _add_common(sub):
    sub.add_argument("--digits", type=int, default=30,
                     help="decimal digits of output (default 30)")
    sub.add_argument("--precision-bits", type=int, default=None,
                     help="working precision override in bits")
    sub.add_argument("--max-terms", type=int, default=None,
                     help="series term cap (advisory)")
    sub.add_argument("--max-levels", type=int, default=None,
                     help="quadrature level cap (advisory)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lerchkit",
        description="Evaluate the Lerch transcendent, classical constants, "
                    "and a registry of double-integral identities.")
    subs = ap.add_subparsers(dest="command", required=True)

    ev = subs.add_parser("eval", help="compute Phi(z, s, u)")
    ev.add_argument("--z", required=True)
    ev.add_argument("--s", required=True)
    ev.add_argument("--u", required=True)
    _add_common(ev)
    ev.set_defaults(func=cmd_eval)

    co = subs.add_parser("constant", help="print a named constant")
    co.add_argument("name")
    co.add_argument("--method", default="oracle",
                    help="oracle | series | product:<id>")
    co.add_argument("--N", type=int, default=64,
                    help="largest partial-product index (default 64)")
    _add_common(co)
    co.set_defaults(func=cmd_constant)

    ve = subs.add_parser("verify", help="run the identity registry")
    ve.add_argument("--filter", default=None, help="case-id glob")
    ve.add_argument("--format", choices=("text", "json"), default="text")
    ve.add_argument("--jobs", type=int, default=None,
                    help="parallel workers (default LERCHKIT_JOBS or 1)")
    _add_common(ve)
    ve.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.digits < 1:
        print("error: --digits must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LerchkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
