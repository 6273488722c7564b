"""
estimation.py — Sampled continuity constants around a known root.

The estimates are maxima over a finite seeded sample, hence lower bounds of the
true suprema. Operator norms are induced sup-norms (max absolute row sum).
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..convball_utils.errors import MissingRootError
from ..convball_utils.utils import debug
from ..solvers.arithmetic import Arithmetic, make_arithmetic
from ..solvers.linalg import LUFactorization
from .operator import OperatorSpec

CAVEAT = "sampled lower bound"


@dataclass(frozen=True)
class ConstantEstimate:
    kappa0_hat: float
    kappa_hat: float
    q: float
    samples: int
    ball_radius: float
    seed: int

    def as_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["caveat"] = CAVEAT
        return out


def _scaled_norm(lu: LUFactorization, diff: np.ndarray) -> float:
    """|| J*^-1 diff ||_inf, one LU solve per column."""
    scaled = np.column_stack([lu.solve(diff[:, j]) for j in range(diff.shape[1])])
    return max(float(sum(abs(e) for e in row)) for row in scaled)


def estimate_constants(
    op: OperatorSpec,
    q: float,
    ball_radius: float,
    samples: int,
    seed: int,
    arith: Optional[Arithmetic] = None,
) -> ConstantEstimate:
    """
    Draw `samples` pairs (x, y) uniformly from the sup-norm ball around x* and
    maximize ||J*^-1 (J(x) - J(y))|| / ||x - y||^q (full constant) and the same
    ratio with y = x* (center constant). Pairs are drawn one after the other from
    default_rng(seed), so a run with more samples extends a run with fewer.
    Points outside the operator's domain are drawn but skipped.
    """
    if not (0.0 < q <= 1.0):
        raise ValueError(f"q must lie in (0, 1], got {q}")
    if not ball_radius > 0:
        raise ValueError("ball radius must be positive")
    if samples < 1:
        raise ValueError("samples must be positive")
    if not op.has_root:
        raise MissingRootError(f"{op.name} declares no known root")

    arith = arith or make_arithmetic()
    center = np.asarray(op.known_root, dtype=float)
    x_star = op.root(arith)
    j_star = op.jacobian(x_star, arith)
    lu = LUFactorization(j_star, arith, "x*")
    rng = np.random.default_rng(seed)
    n = op.dimension

    kappa0 = 0.0
    kappa = 0.0
    for _ in range(samples):
        x = center + rng.uniform(-ball_radius, ball_radius, n)
        y = center + rng.uniform(-ball_radius, ball_radius, n)
        if not (op.in_domain(x) and op.in_domain(y)):
            continue
        jx = op.jacobian(x, arith)

        gap = float(np.max(np.abs(x - center)))
        if gap > 0:
            kappa0 = max(kappa0, _scaled_norm(lu, jx - j_star) / gap ** q)

        gap = float(np.max(np.abs(x - y)))
        if gap > 0:
            kappa = max(kappa, _scaled_norm(lu, jx - op.jacobian(y, arith)) / gap ** q)

    debug(f"estimate on {op.name}: kappa0_hat={kappa0:.6g}, kappa_hat={kappa:.6g} over {samples} samples")
    return ConstantEstimate(
        kappa0_hat=kappa0,
        kappa_hat=kappa,
        q=float(q),
        samples=int(samples),
        ball_radius=float(ball_radius),
        seed=int(seed),
    )
