"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
3 algebraic failure (non-invertible element, degenerate web or chart).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraError, VariableContext
from .dynamics import dynamics_checks
from .hess import ZeroDensity, surface_hess_curvature
from .ideals import (
    ORDERS,
    IdealError,
    buchberger_reduced_gb,
    curvature_numerator,
    excluded_locus_status,
    extract_param_ideal,
    parse_what,
)
from .parser import ParseError, parse_expression
from .report import Check, Report
from .surface import CATALOG_NAMES, DegenerateChart, NonInvertible, SurfaceError, surface_lookup
from .verification import table_checks
from .webgeom import DegenerateWeb, PlaneFrame, leaf_line_curvature, surface_web_curvature

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_ALGEBRA = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_set(items: Sequence[str] | None) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--set expects name=rational, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational number: {value!r}") from None
    return out


def _surface(args: argparse.Namespace):
    name = args.surface
    if name == "custom" or args.poly:
        params = tuple(p for p in (args.params or "").split(",") if p)
        nonzero = tuple(p for p in (args.nonzero or "").split(",") if p)
        surface = surface_lookup("custom", args.poly, params, nonzero)
    else:
        if name not in CATALOG_NAMES:
            raise UsageError(f"unknown surface {name!r}; choose from {', '.join(CATALOG_NAMES)}")
        surface = surface_lookup(name)
    values = _parse_set(getattr(args, "set", None))
    if values:
        try:
            surface = surface.specialize(values)
        except SurfaceError as exc:
            raise UsageError(str(exc)) from None
    return surface


def _pair(text: str | None) -> tuple[int, int]:
    if text is None:
        raise UsageError("--pair is required for hess-curvature")
    digits = [c for c in text if c.isdigit()]
    if len(digits) != 2 or set(digits) - set("123") or digits[0] == digits[1]:
        raise UsageError(f"invalid pair {text!r}; use 12, 23, 13 or similar")
    return int(digits[0]), int(digits[1])


def _curvature_entries(cn) -> list[Check]:
    return [
        Check.info("chart", f"({', '.join(cn.chart.kept)}), eliminated {cn.chart.eliminated}"),
        Check.info("numerator", cn.numerator),
        Check.info("denominator", cn.factored_denominator()),
        Check.info("flat", "true" if cn.is_zero else "false"),
    ]


def cmd_list(args: argparse.Namespace, report: Report) -> int:
    for name in CATALOG_NAMES:
        s = surface_lookup(name)
        params = ", ".join(s.param_names) or "none"
        nz = f"; nonzero: {', '.join(s.nonzero_params)}" if s.nonzero_params else ""
        report.add(Check.info(name, f"{s.poly} = 0  [parameters: {params}{nz}]"))
    return EXIT_OK


def cmd_web(args: argparse.Namespace, report: Report) -> int:
    surface = _surface(args)
    report.add(_curvature_entries(surface_web_curvature(surface, args.chart)))
    return EXIT_OK


def cmd_hess(args: argparse.Namespace, report: Report) -> int:
    pair = _pair(args.pair)
    surface = _surface(args)
    report.add(_curvature_entries(surface_hess_curvature(surface, pair)))
    return EXIT_OK


def cmd_ideal(args: argparse.Namespace, report: Report) -> int:
    surface = _surface(args)
    try:
        what = parse_what(args.what)
    except IdealError as exc:
        raise UsageError(str(exc)) from None
    cn = curvature_numerator(surface, what)
    ideal = extract_param_ideal(cn.numerator, surface)
    G = buchberger_reduced_gb(ideal, args.order)
    report.add(Check.info("generators", len(ideal.generators)))
    report.add(Check.info("groebner basis", G))
    report.add(Check.info("order", args.order))
    status = excluded_locus_status(G, surface)
    report.add(Check.info("flat locus", {"empty": "never flat", "excluded": "only at excluded parameter values", "allowed": "nonempty"}[status]))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, report: Report) -> int:
    report.add(table_checks(args.order, workers=args.jobs))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_dynamics(args: argparse.Namespace, report: Report) -> int:
    report.add(dynamics_checks())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_leaf(args: argparse.Namespace, report: Report) -> int:
    params = tuple(p for p in (args.params or "").split(",") if p)
    ctx = VariableContext(param_vars=params)
    f = parse_expression(args.f, ctx)
    frame = PlaneFrame(ctx, ("x1", "x2"))
    report.add(Check.info("gamma", leaf_line_curvature(frame.lift(f), frame)))
    return EXIT_OK


COMMANDS = {
    "list": cmd_list,
    "web-curvature": cmd_web,
    "hess-curvature": cmd_hess,
    "ideal": cmd_ideal,
    "verify-table": cmd_verify,
    "dynamics": cmd_dynamics,
    "leaf-curvature": cmd_leaf,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="painleve-webs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, surface: bool = True) -> None:
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        if surface:
            p.add_argument("--surface", default="pvi", help="catalog name or 'custom'")
            p.add_argument("--poly", help="defining polynomial of a custom surface")
            p.add_argument("--params", help="comma-separated parameter names of a custom surface")
            p.add_argument("--nonzero", help="comma-separated parameters declared nonzero")
            p.add_argument("--set", nargs="+", metavar="NAME=VALUE", help="substitute rational parameter values")

    common(sub.add_parser("list", help="list the surface catalog"), surface=False)
    p = sub.add_parser("web-curvature", help="Blaschke curvature of the coordinate 3-web")
    common(p)
    p.add_argument("--chart", default="x3", help="eliminated variable (default x3)")
    p = sub.add_parser("hess-curvature", help="Hess curvature of a pair of coordinate foliations")
    common(p)
    p.add_argument("--pair", help="retained coordinates, e.g. 12")
    p = sub.add_parser("ideal", help="Groebner basis of the flat locus")
    common(p)
    p.add_argument("--what", default="web", help="web or hessIJ (e.g. hess12)")
    p.add_argument("--order", choices=ORDERS, default="lex")
    p = sub.add_parser("verify-table", help="compare all curvature ideals against the reference table")
    common(p, surface=False)
    p.add_argument("--order", choices=ORDERS, default="lex")
    p.add_argument("--jobs", type=int, default=1, help="evaluate cells concurrently")
    common(sub.add_parser("dynamics", help="involutions, pullbacks and periodicity"), surface=False)
    p = sub.add_parser("leaf-curvature", help="curvature of the leaves of f(x1, x2) = const")
    common(p, surface=False)
    p.add_argument("--f", required=True, help="first integral in x1, x2")
    p.add_argument("--params", help="comma-separated extra parameter names")
    return parser


def run_command(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = Report(" ".join(argv if argv is not None else sys.argv[1:]))
    start = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, report)
    except (UsageError, ParseError, SurfaceError, IdealError) as exc:
        if isinstance(exc, (NonInvertible, DegenerateChart)):
            return _fail(out, args, report, exc, EXIT_ALGEBRA)
        return _fail(out, args, report, exc, EXIT_USAGE)
    except (NonInvertible, DegenerateWeb, DegenerateChart, ZeroDensity, AlgebraError) as exc:
        return _fail(out, args, report, exc, EXIT_ALGEBRA)
    report.timing = time.perf_counter() - start
    print(report.to_json() if args.json else report.to_text(), file=out)
    return code


def _fail(out, args, report: Report, exc: Exception, code: int) -> int:
    report.add(Check("error", "fail", None, f"{type(exc).__name__}: {exc}"))
    print(report.to_json() if args.json else report.to_text(), file=out if args.json else sys.stderr)
    return code


def main() -> None:
    sys.exit(run_command())
