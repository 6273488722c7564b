"""
analysis.py — Computational order of convergence and per-step error-bound checks.
"""

from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

import mpmath
import numpy as np

from ..convball_utils.errors import BallViolationError, DomainError, InsufficientDataError, MissingRootError
from ..majorant.constants import ContinuityConstants, RadiusReport
from ..majorant.functions import eval_majorant
from ..problems.operator import OperatorSpec
from .arithmetic import Arithmetic, make_arithmetic
from .linalg import LUFactorization
from .methods import IterationMethod, IterationTrace, SolveConfig

BOUND_FLOOR_FACTOR = 64
ORDER_FLOOR_FACTOR = 1000

# sub-iterate -> majorant index, per method
BOUND_LAYOUT = {
    IterationMethod.SEVENTH: (("y", 1), ("z1", 2), ("z2", 3), ("x_next", 4)),
    IterationMethod.FIFTH: (("y", 1), ("z1", 2), ("x_next", 3)),
    IterationMethod.NEWTON: (),
}


@dataclass(frozen=True)
class OrderEstimate:
    coc: float
    samples_used: int


@dataclass(frozen=True)
class BoundCheck:
    step: int
    label: str
    index: int  # majorant index, 0 for the monotone-decrease check
    lhs: float
    rhs: float
    holds: bool

    def as_dict(self):
        return asdict(self)


def epsilon_floor(arith: Arithmetic, scale, factor: float = ORDER_FLOOR_FACTOR):
    """Errors at or below this level are rounding noise of the arithmetic."""
    return factor * arith.eps * max(1, scale)


def estimate_order(errors: Sequence, floor=0) -> OrderEstimate:
    """
    coc = ln(e[n+1]/e[n]) / ln(e[n]/e[n-1]) on the last admissible triple.
    Errors at or below `floor` end the usable sequence; only the strictly
    decreasing tail before that point is used.
    """
    usable = []
    for e in errors:
        if e is None or not e > 0 or e <= floor:
            break
        usable.append(e)
    tail = usable[-1:]
    for e in reversed(usable[:-1]):
        if e <= tail[0]:
            break
        tail.insert(0, e)
    if len(tail) < 3:
        raise InsufficientDataError(
            f"need at least 3 strictly decreasing errors above the precision floor, got {len(tail)}"
        )
    e0, e1, e2 = tail[-3:]
    coc = float(mpmath.log(e2 / e1) / mpmath.log(e1 / e0))
    return OrderEstimate(coc=coc, samples_used=len(tail))


def refine_root(op: OperatorSpec, cfg: Optional[SolveConfig] = None, max_iterations: int = 100) -> np.ndarray:
    """Newton-polish the declared root in cfg's arithmetic."""
    if not op.has_root:
        raise MissingRootError(f"{op.name} declares no known root")
    cfg = cfg or SolveConfig()
    arith = cfg.arithmetic
    x = op.root(arith)
    stop = 4 * arith.eps * max(1, arith.norm(x))
    for _ in range(max_iterations):
        delta = LUFactorization(op.jacobian(x, arith), arith, "x*").solve(op.evaluate(x, arith))
        x = x - delta
        if arith.norm(delta) <= stop:
            break
    return x


def verify_error_bounds(
    trace: IterationTrace,
    constants: ContinuityConstants,
    x_star,
    report: RadiusReport,
) -> List[BoundCheck]:
    """
    For every step with a successor, compare each sub-iterate's distance to x*
    with eta_i(|x_n - x*|) |x_n - x*|, and check |x_{n+1} - x*| <= |x_n - x*|.
    A slack of 64 eps max(1, |x*|) absorbs rounding once the iteration has converged.
    """
    arith = make_arithmetic(trace.precision_digits)
    if isinstance(x_star, np.ndarray) and (x_star.dtype == object) == (arith.digits > 16):
        xs = x_star
    else:
        xs = arith.vector([repr(float(v)) for v in np.asarray(x_star, dtype=float).reshape(-1)])

    def dist(v) -> float:
        return float(arith.norm(v - xs, trace.norm))

    start = dist(trace.steps[0].x)
    if start >= report.rho_min:
        raise BallViolationError(
            f"|x0 - x*| = {start:.6g} is not inside the convergence ball of radius {report.rho_min:.6g}"
        )
    floor = float(epsilon_floor(arith, arith.norm(xs), BOUND_FLOOR_FACTOR))

    checks: List[BoundCheck] = []
    for n, step in enumerate(trace.steps[:-1]):
        a = dist(step.x)
        nxt = trace.steps[n + 1].x
        points = {"y": step.y, "z1": step.z1, "z2": step.z2, "x_next": nxt}
        for label, i in BOUND_LAYOUT[trace.method]:
            lhs = dist(points[label])
            try:
                rhs = eval_majorant(constants, i, a) * a
            except DomainError:
                checks.append(BoundCheck(n, label, i, lhs, float("nan"), False))
                continue
            checks.append(BoundCheck(n, label, i, lhs, rhs, lhs <= rhs + floor))
        lhs = dist(nxt)
        checks.append(BoundCheck(n, "monotone", 0, lhs, a, lhs <= a + floor))
    return checks
