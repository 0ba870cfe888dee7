"""Command line interface: ``verify``, ``check-fn`` and ``constants``."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from typing import Optional, Sequence

from gaconvex.constants import InequalityParams, Tag, constant_routes
from gaconvex.convexity import DEFAULT_GRID, DEFAULT_TOL, check_alpha_m_ga
from gaconvex.errors import DomainError, ExprSyntaxError
from gaconvex.functions import derivative_power, from_expr
from gaconvex.harness import emit_report, load_config, run_sweep

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_NUMERIC = 2

_ALWAYS = (Tag.C0, Tag.R0, Tag.V1, Tag.V2)


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    fmt = args.format or cfg.format
    out = args.out or cfg.output
    report = run_sweep(cfg, jobs=args.jobs)

    width = max((len(k) for k in report.summary), default=10)
    for statement, counts in report.summary.items():
        slack = report.min_slack.get(statement, math.nan)
        parts = "  ".join(f"{k}={v}" for k, v in counts.items())
        print(f"{statement:<{width}}  {parts}  min_slack={slack:.3e}")
    print(f"records: {len(report.records)}, skipped parameter points: {len(report.skipped)}")

    if out:
        emit_report(report, out, fmt)
        print(f"report written to {out}")
    return report.exit_code


def _cmd_check_fn(args: argparse.Namespace) -> int:
    try:
        f = from_expr(args.expr)
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    g = derivative_power(f, args.q)
    verdict = check_alpha_m_ga(g, args.alpha, args.m, args.lo, args.hi, args.grid, args.tol)
    status = "certified" if verdict.certified else "not certified"
    print(f"|d/du ({f.source})|^{args.q:g} on [{args.lo:g}, {args.hi:g}], "
          f"alpha = {args.alpha:g}, m = {args.m:g}: {status}")
    print(f"worst scaled violation: {verdict.worst_violation:.6e} (tol {verdict.tol:g}, "
          f"grid {verdict.grid_density})")
    if verdict.witness is not None:
        x, y, t = verdict.witness
        print(f"witness: x = {x!r}, y = {y!r}, t = {t!r}")
    return EXIT_OK if verdict.certified else EXIT_VIOLATED


def _cmd_constants(args: argparse.Namespace) -> int:
    q = args.q
    if args.p is not None:
        q = args.p / (args.p - 1)
    b = args.b if args.b is not None else 2.0 * args.a
    x = args.x if args.x is not None else math.sqrt(args.a * b)
    params = InequalityParams(a=args.a, b=b, x=x, theta=args.theta, lam=args.lam,
                              alpha=args.alpha, m=args.m, q=q)

    if args.tag:
        tags = [Tag(args.tag)]
    else:
        tags = [t for t in _ALWAYS if not (t is Tag.R0 and params.p is None)]
    print(f"{'tag':<4} {'closed form':>24} {'quadrature':>24} {'rel. delta':>11}")
    for tag in tags:
        closed, quad = constant_routes(tag, params)
        if closed is None:
            print(f"{tag.value:<4} {'-':>24} {quad!r:>24} {'-':>11}")
            continue
        delta = abs(closed - quad) / max(abs(closed), 1e-300)
        print(f"{tag.value:<4} {closed!r:>24} {quad!r:>24} {delta:>11.2e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaconvex",
        description="Numerical verification of fractional Hermite-Hadamard type "
                    "inequalities for (alpha, m)-GA-convex functions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log skipped points")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a parameter sweep from a config file")
    p.add_argument("--config", required=True, help="TOML or JSON sweep configuration")
    p.add_argument("--out", help="report path (overrides the config)")
    p.add_argument("--format", choices=("json", "csv"), help="report format")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-fn", help="screen |f'|^q for (alpha, m)-GA-convexity")
    p.add_argument("--expr", required=True, help="expression in u, e.g. 'u^2 + ln(u)'")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_check_fn)

    p = sub.add_parser("constants", help="evaluate bound constants by both routes")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--p", type=float, help="Hölder exponent (q is its conjugate)")
    group.add_argument("--q", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--tag", choices=[t.value for t in Tag], help="a single constant")
    p.set_defaults(func=_cmd_constants)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
