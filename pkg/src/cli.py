"""
cli.py — Command-line entrypoints.
Usage examples (run from repo root):
  python -m src.cli radius --class lipschitz --c0 96.6628 --c 96.6628
  python -m src.cli radius --class hoelder --c0 0.0608658 --c 0.094888 --q 1 --format json
  python -m src.cli solve --method seventh --example planck --x0 4.0
  python -m src.cli solve --method seventh --example hammerstein --x0 0.3
  python -m src.cli solve --method seventh --example planck --x0 4.0 --verify-bounds --class hoelder --c0 0.0608658 --c 0.094888
  python -m src.cli reproduce --table all --format csv
  python -m src.cli estimate --example planck --q 1 --radius 1 --samples 10000 --seed 7
  python -m src.cli order --method seventh --example planck --x0 4.3 --precision 256
"""

import argparse
import sys

from .convball_utils.output import FORMATS
from .convball_utils.settings import load_environment
from .main import (
    EXAMPLES,
    cmd_estimate,
    cmd_order,
    cmd_radius,
    cmd_reproduce,
    cmd_solve,
    run_command,
)
from .solvers.methods import NORMS, IterationMethod


def _add_constants(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--class", dest="kind", choices=["lipschitz", "hoelder"], required=required)
    p.add_argument("--c0", type=float, required=required, help="center constant (psi0 / kappa0)")
    p.add_argument("--c", type=float, required=required, help="full constant (psi / kappa)")
    p.add_argument("--q", type=float, default=None, help="Hoelder exponent in (0, 1]; 1 when omitted")


def _add_problem(p: argparse.ArgumentParser) -> None:
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--example", choices=sorted(EXAMPLES))
    source.add_argument("--problem", help="json problem-definition file")
    p.add_argument("--nodes", type=int, default=None, help="Gauss-Legendre nodes for the hammerstein example")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="markdown")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convball")
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in IterationMethod]

    # radius
    p_radius = sub.add_parser("radius", help="Convergence radii rho_1..rho_4, rho and the uniqueness radius")
    _add_constants(p_radius, required=True)
    p_radius.add_argument("--tol", type=float, default=None, help="bisection tolerance (default CONVBALL_ABS_TOL)")
    p_radius.add_argument("--grid-points", type=int, default=None, help="bracket scan grid (default CONVBALL_GRID_POINTS)")
    _add_format(p_radius)

    # solve
    p_solve = sub.add_parser("solve", help="Run Newton, fifth- or seventh-order iteration and print the trace")
    p_solve.add_argument("--method", choices=methods, required=True)
    _add_problem(p_solve)
    p_solve.add_argument("--x0", required=True, help="comma list; one value is broadcast to every coordinate")
    p_solve.add_argument("--tol", type=float, default=None)
    p_solve.add_argument("--max-iter", type=int, default=None)
    p_solve.add_argument("--precision", type=int, default=16, help="significant digits; above 16 uses mpmath")
    p_solve.add_argument("--norm", choices=NORMS, default="sup")
    p_solve.add_argument("--verify-bounds", action="store_true", help="check the per-step error bounds (needs --class/--c0/--c)")
    _add_constants(p_solve, required=False)
    _add_format(p_solve)

    # reproduce
    p_repro = sub.add_parser("reproduce", help="Compare computed radii with the published tables")
    p_repro.add_argument("--table", choices=["1", "2", "3", "all"], default="all")
    p_repro.add_argument("--rtol", type=float, default=0.01)
    _add_format(p_repro)

    # estimate
    p_est = sub.add_parser("estimate", help="Sampled continuity constants around the known root")
    _add_problem(p_est)
    p_est.add_argument("--q", type=float, default=1.0)
    p_est.add_argument("--radius", type=float, required=True)
    p_est.add_argument("--samples", type=int, default=10_000)
    p_est.add_argument("--seed", type=int, required=True)
    _add_format(p_est)

    # order
    p_order = sub.add_parser("order", help="Computational order of convergence at extended precision")
    p_order.add_argument("--method", choices=methods, required=True)
    _add_problem(p_order)
    p_order.add_argument("--x0", required=True)
    p_order.add_argument("--precision", type=int, default=64)
    p_order.add_argument("--max-iter", type=int, default=None)
    _add_format(p_order)

    return parser


HANDLERS = {
    "radius": cmd_radius,
    "solve": cmd_solve,
    "reproduce": cmd_reproduce,
    "estimate": cmd_estimate,
    "order": cmd_order,
}


def main(argv=None) -> int:
    load_environment()
    parser = build_parser()
    args = parser.parse_args(argv)
    return run_command(HANDLERS[args.command], args)


if __name__ == "__main__":
    sys.exit(main())
