"""Command-line entry point: ``paravec solve | verify | gen``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import io, oracle, scalarlp
from .engine import INFEASIBLE, NO_SOLUTION, EngineOptions, solve
from .errors import (ConeNotPointed, ConeNotSolid, DegenerateInteriorPoint, DimensionMismatch,
                     InfeasibleProblem, InteriorPointInvalid, NoSolution, NumericalBreakdown,
                     ParseError, PreconditionViolated, SingularMatrix, UnsupportedDimension)
from .generators import generate
from .tolerances import default_tolerances

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_NO_SOLUTION = 2
EXIT_USAGE = 3
EXIT_NUMERICAL = 4

_INPUT_ERRORS = (ParseError, DimensionMismatch, ConeNotPointed, ConeNotSolid,
                 InteriorPointInvalid, DegenerateInteriorPoint, PreconditionViolated,
                 UnsupportedDimension, OSError, ValueError)

log = logging.getLogger("paravec")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paravec", description="Parametric simplex solver for vector LPs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("solve", help="compute a solution")
    s.add_argument("--input", required=True)
    s.add_argument("--output", required=True)
    s.add_argument("--init", nargs="+", default=["p0"], metavar="METHOD",
                   help="p0 | perturb | weight w1,...,wq")
    s.add_argument("--dedupe-images", action="store_true")
    s.add_argument("--filter-generators", action="store_true")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--partition-csv")
    s.add_argument("--partition-svg")

    v = sub.add_parser("verify", help="check a solution with the brute-force oracle")
    v.add_argument("--input", required=True)
    v.add_argument("--solution", required=True)
    v.add_argument("--grid", type=int, default=30)
    v.add_argument("--samples", type=int, default=100)

    g = sub.add_parser("gen", help="emit a random problem")
    g.add_argument("--kind", choices=("nondegenerate", "degenerate"), required=True)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output")
    return parser


def _parse_init(tokens):
    method = tokens[0]
    if method in ("p0", "perturb") and len(tokens) == 1:
        return method, None
    if method == "weight" and len(tokens) == 2:
        try:
            return method, np.array([float(t) for t in tokens[1].split(",")])
        except ValueError:
            raise UsageError(f"bad weight vector {tokens[1]!r}") from None
    raise UsageError("--init expects 'p0', 'perturb' or 'weight w1,...,wq'")


def cmd_solve(args) -> int:
    method, weight = _parse_init(args.init)
    tol = default_tolerances()
    if args.tol is not None:
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        tol = tol.with_geom(args.tol)
    p = io.parse_problem(Path(args.input).read_text())
    opts = EngineOptions(dedupe_images=args.dedupe_images,
                         filter_generators=args.filter_generators, tol=tol)
    out = Path(args.output)
    try:
        sol = solve(p, init=method, weight=weight, options=opts)
    except InfeasibleProblem as exc:
        out.write_text(io.status_document(INFEASIBLE, str(exc)))
        print(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    except NoSolution as exc:
        out.write_text(io.status_document(NO_SOLUTION, str(exc)))
        print(f"no solution: {exc}")
        return EXIT_NO_SOLUTION
    out.write_text(io.serialize_solution(sol))
    if args.partition_csv:
        Path(args.partition_csv).write_text(io.export_partition(sol, "csv"))
    if args.partition_svg:
        Path(args.partition_svg).write_text(io.export_partition(sol, "svg"))
    print(f"solved: {len(sol.points)} points, {len(sol.directions)} directions, "
          f"{len(sol.cells)} dictionaries visited")
    return EXIT_OK


def cmd_verify(args) -> int:
    p = io.parse_problem(Path(args.input).read_text())
    sol = io.parse_solution(Path(args.solution).read_text())
    if sol.status == INFEASIBLE:
        ok = scalarlp.feasible_basis(scalarlp.ScalarLp(np.zeros(p.n), p.constraint_matrix,
                                                       p.rhs)) is None
        print(f"infeasibility {'confirmed' if ok else 'REFUTED'}")
        return EXIT_OK if ok else EXIT_NUMERICAL
    if sol.status == NO_SOLUTION:
        rep = oracle.no_solution_check(p, args.grid)
        print(f"no-solution check: {rep.grid_points_checked} weights, "
              f"{len(rep.mismatches)} mismatches")
        return EXIT_OK if rep.ok else EXIT_NUMERICAL
    grid, rec = oracle.verify(p, sol, args.grid, args.samples)
    print(f"grid check: {grid.grid_points_checked} parameters, {len(grid.mismatches)} mismatches, "
          f"max gap {grid.max_abs_gap:.3g}")
    print(f"recession check: {rec.grid_points_checked} weights, {len(rec.mismatches)} mismatches")
    for lam, expected, got in grid.mismatches[:5]:
        print(f"  lambda={np.round(lam, 6).tolist()} expected={expected} got={got}")
    return EXIT_OK if grid.ok and rec.ok else EXIT_NUMERICAL


def cmd_gen(args) -> int:
    if min(args.q, args.n, args.m) < 1 or args.q < 2:
        raise UsageError("need q >= 2 and n, m >= 1")
    text = io.serialize_problem(generate(args.kind, args.q, args.n, args.m, args.seed))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: solve, verify or gen")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        handler = {"solve": cmd_solve, "verify": cmd_verify, "gen": cmd_gen}[args.command]
        return handler(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (NumericalBreakdown, SingularMatrix) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
