"""Command-line front end: ``symrees COMMAND ... -w WORKSPACE``.

Exit codes: 0 success, 1 computational failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import asymptotics as asy
from .dsl import ParseError, Workspace, format_ideal_gens, parse_workspace
from .geometry import analytic_spread, integral_closure, newton_polyhedron
from .ideal import DimensionError, DomainError, box_indices, format_monomial, multi_power
from .regularity import ResourceError, betti_to_csv, koszul_betti, linear_bound_check, regularity
from .saturation import (
    PlanValidationError,
    alpha_stabilization,
    build_plan,
    rees_generation_degrees,
    saturate_certified,
    saturate_planned,
    saturate_via_decomposition,
)


class UsageError(Exception):
    """Bad arguments or references; exit code 2."""


def parse_index(text: str) -> tuple[int, ...]:
    try:
        n = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad multi-index {text!r}") from None
    if any(x < 0 for x in n):
        raise UsageError(f"negative entry in multi-index {text!r}")
    return n


def parse_grid(text: str, r: int) -> list[tuple[int, ...]]:
    """``a..b`` per axis, comma separated; a single range is used on every axis."""
    ranges = []
    for part in text.split(","):
        lo, sep, hi = part.partition("..")
        try:
            lo_i, hi_i = (int(lo), int(hi)) if sep else (int(lo), int(lo))
        except ValueError:
            raise UsageError(f"bad grid range {part!r}") from None
        if lo_i < 0 or hi_i < lo_i:
            raise UsageError(f"empty or negative grid range {part!r}")
        ranges.append((lo_i, hi_i))
    if len(ranges) == 1:
        ranges *= r
    if len(ranges) != r:
        raise UsageError(f"grid has {len(ranges)} axes, family has {r} ideals")
    return box_indices([a for a, _ in ranges], [b for _, b in ranges])


def _check_arity(n: tuple[int, ...], r: int):
    if len(n) != r:
        raise UsageError(f"multi-index {n} has {len(n)} entries, family has {r} ideals")


def load_workspace(path: str | None) -> Workspace:
    if path is None:
        raise UsageError("this command needs a workspace (-w FILE)")
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_workspace(text)


def _lookup(getter, name: str):
    try:
        return getter(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_table(path: str) -> asy.LengthTable:
    try:
        return asy.LengthTable.from_csv(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read table {path}: {exc}") from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_saturate(args) -> int:
    ws = load_workspace(args.workspace)
    fam = _lookup(ws.family, args.family)
    n = parse_index(args.n)
    _check_arity(n, fam.r)
    fam.require_j()
    if args.method == "planned":
        sat = saturate_planned(build_plan(fam), fam, n)
    elif args.method == "decomposition":
        sat = saturate_via_decomposition(multi_power(fam.ideals, n), fam.j_monomial_ideal())
    else:
        sat = saturate_certified(fam, n)
    print(sat)
    return 0


def cmd_table(args) -> int:
    ws = load_workspace(args.workspace)
    fam = _lookup(ws.family, args.family)
    grid = parse_grid(args.grid, fam.r)
    if args.mode == "torsion":
        table = asy.length_table(fam, grid)
    elif args.mode.startswith("quotient:"):
        other = _lookup(ws.family, args.mode.split(":", 1)[1])
        table = asy.length_table(fam, grid, "quotient", other)
    else:
        raise UsageError(f"unknown mode {args.mode!r} (torsion or quotient:NAME)")
    _emit(table.to_csv(), args.out)
    return 0


def cmd_fit(args) -> int:
    table = _read_table(args.table)
    fit = asy.fit_polynomial(table, args.max_degree, args.start, args.holdout)
    if args.json:
        print(asy.fit_to_json(fit))
    else:
        print("NO_FIT" if fit is None else fit)
    return 0 if fit is not None else 1


def cmd_fitray(args) -> int:
    table = _read_table(args.table)
    direction = parse_index(args.direction) if args.direction else (1,) * table.r
    if len(direction) != table.r:
        raise UsageError(f"direction has {len(direction)} entries, table has {table.r} axes")
    values = table.ray(direction)
    fit = asy.fit_quasipolynomial_ray(values, args.max_period, args.max_degree, args.start)
    if args.json:
        print(asy.fit_to_json(fit))
    elif fit is None:
        print("NO_FIT")
    else:
        print(f"period = {fit.period}")
        print(f"degree = {fit.degree}")
        print(f"validated = {fit.validated_points}")
        for c, piece in enumerate(fit.pieces):
            print(f"t = {c} mod {fit.period}: {str(piece).replace('n', 't')}")
    return 0 if fit is not None else 1


def cmd_bounds(args) -> int:
    ws = load_workspace(args.workspace)
    fam = _lookup(ws.family, args.family)
    grid = parse_grid(args.grid, fam.r)
    d = fam.ring.num_vars
    table = asy.length_table(fam, grid)
    fit = asy.fit_polynomial(table, d, args.start, args.holdout)
    if fit is None:
        print(f"NO_FIT of total degree <= {d}")
        return 1
    print(f"fit = {fit}")
    report = asy.check_bounds(fam, fit)
    sys.stdout.write(report.render())
    return 0 if report.passed else 1


def cmd_alpha(args) -> int:
    ws = load_workspace(args.workspace)
    fam = _lookup(ws.family, args.family)
    report = alpha_stabilization(fam, args.norm_bound)
    alpha = report.alpha
    if args.fit_bound is not None:
        alpha = alpha_stabilization(fam, args.fit_bound).alpha
    for n in sorted(report.k, key=lambda n: (sum(n), n)):
        print(f"n = {','.join(map(str, n))}: k = {report.k[n]}")
    print(f"alpha = {alpha}" + (f" (from |n| <= {args.fit_bound})" if args.fit_bound is not None else ""))
    ok = report.bound_holds(alpha)
    print("k(n) <= alpha*|n|: " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 1


def cmd_gens(args) -> int:
    ws = load_workspace(args.workspace)
    fam = _lookup(ws.family, args.family)
    rows = rees_generation_degrees(fam, args.up_to)
    for n, count in rows:
        print(f"n = {','.join(map(str, n))}: new generators = {count}")
    standard = all(count == 0 for n, count in rows if sum(n) >= 2)
    print(f"standard graded up to {args.up_to}: {'yes' if standard else 'no'}")
    return 0


def cmd_newton(args) -> int:
    ws = load_workspace(args.workspace)
    ideal = _lookup(ws.ideal, args.ideal)
    poly = newton_polyhedron(ideal)
    print("vertices:")
    for v in poly.vertices:
        print(f"  {format_monomial(v, ideal.ring)}  {list(v)}")
    print("inequalities:")
    for w, c in poly.facets:
        print(f"  {list(w)} . x >= {c}")
    return 0


def cmd_spread(args) -> int:
    ws = load_workspace(args.workspace)
    print(analytic_spread(_lookup(ws.ideal, args.ideal)))
    return 0


def cmd_closure(args) -> int:
    ws = load_workspace(args.workspace)
    print(integral_closure(_lookup(ws.ideal, args.ideal)))
    return 0


def cmd_reg(args) -> int:
    ws = load_workspace(args.workspace)
    ideal = _lookup(ws.ideal, args.ideal)
    if args.betti:
        sys.stdout.write(betti_to_csv(koszul_betti(ideal)))
    print(f"reg = {regularity(ideal)}")
    return 0


def cmd_regtable(args) -> int:
    ws = load_workspace(args.workspace)
    fam = _lookup(ws.family, args.family)
    grid = parse_grid(args.grid, fam.r)
    report = linear_bound_check(fam, grid, with_saturation=args.saturated, with_closure=args.closure)
    sys.stdout.write(report.render())
    return 0 if report.passed else 1


def cmd_decompose(args) -> int:
    from .ideal import irreducible_decomposition

    ws = load_workspace(args.workspace)
    for comp in irreducible_decomposition(_lookup(ws.ideal, args.ideal)):
        print(f"({format_ideal_gens(comp)})")
    return 0


def cmd_check(args) -> int:
    from .checks import run_suites

    try:
        outcomes = run_suites(args.suite, seed=args.seed, trials=args.trials)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    for o in outcomes:
        print(o.line())
    failed = [o.name for o in outcomes if not o.ok]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symrees", description="Saturations, torsion lengths and regularity of monomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True)
    ws_opt = argparse.ArgumentParser(add_help=False)
    ws_opt.add_argument("-w", "--workspace", help="workspace file ('-' for stdin)")
    fit_opt = argparse.ArgumentParser(add_help=False)
    fit_opt.add_argument("--start", type=int, default=None, help="first index used for fitting")
    fit_opt.add_argument("--holdout", type=int, default=None, help="hold-out points required past the fitting box")

    p = sub.add_parser("saturate", parents=[ws_opt], help="saturation of a multi-power")
    p.add_argument("family")
    p.add_argument("--n", required=True, help="multi-index, e.g. 2,1")
    p.add_argument("--method", choices=["certified", "planned", "decomposition"], default="certified")
    p.set_defaults(func=cmd_saturate)

    p = sub.add_parser("table", parents=[ws_opt], help="length table as CSV")
    p.add_argument("family")
    p.add_argument("--grid", required=True)
    p.add_argument("--mode", default="torsion", help="torsion or quotient:FAMILY")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("fit", parents=[fit_opt], help="exact polynomial fit of a table")
    p.add_argument("table")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fitray", help="quasi-polynomial fit along a ray of a table")
    p.add_argument("table")
    p.add_argument("--max-period", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--direction", help="ray direction, default the diagonal")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fitray)

    p = sub.add_parser("bounds", parents=[ws_opt, fit_opt], help="degree bounds for the torsion polynomial")
    p.add_argument("family")
    p.add_argument("--grid", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("alpha", parents=[ws_opt], help="stabilisation indices and their slope")
    p.add_argument("family")
    p.add_argument("--norm-bound", type=int, default=8)
    p.add_argument("--fit-bound", type=int, default=None, help="compute alpha from |n| <= this bound only")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("gens", parents=[ws_opt], help="new generators of the saturated pieces")
    p.add_argument("family")
    p.add_argument("--up-to", type=int, required=True)
    p.set_defaults(func=cmd_gens)

    for name, func, text in [
        ("newton", cmd_newton, "Newton polyhedron vertices and inequalities"),
        ("spread", cmd_spread, "analytic spread"),
        ("closure", cmd_closure, "integral closure"),
        ("decompose", cmd_decompose, "irreducible decomposition"),
    ]:
        p = sub.add_parser(name, parents=[ws_opt], help=text)
        p.add_argument("ideal")
        p.set_defaults(func=func)

    p = sub.add_parser("reg", parents=[ws_opt], help="Castelnuovo-Mumford regularity")
    p.add_argument("ideal")
    p.add_argument("--betti", action="store_true", help="also print the Betti table as CSV")
    p.set_defaults(func=cmd_reg)

    p = sub.add_parser("regtable", parents=[ws_opt], help="regularity of multi-powers against the linear bound")
    p.add_argument("family")
    p.add_argument("--grid", required=True)
    p.add_argument("--saturated", action="store_true")
    p.add_argument("--closure", action="store_true")
    p.set_defaults(func=cmd_regtable)

    p = sub.add_parser("check", help="run the property suites")
    p.add_argument("--suite", nargs="+", default=["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, DimensionError, asy.PreconditionError, ResourceError, PlanValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
