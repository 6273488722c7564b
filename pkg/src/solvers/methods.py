"""
methods.py — Newton, fifth-order and seventh-order iterations with per-step traces.

With Gx = T'(x_n)^-1 and Gy = T'(y_n)^-1 (applied through LU solves):
  y      = x - Gx T(x) / 2
  z1     = x - Gy T(x)
  z2     = z1 - (2 Gy - Gx) T(z1)        (the fifth-order scheme stops here)
  x_next = z2 - (2 Gy - Gx) T(z2)
Newton is x_next = x - Gx T(x).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..convball_utils.errors import DomainError, MaxIterationsExceeded
from ..convball_utils.settings import env_float, env_int
from ..convball_utils.utils import debug
from ..problems.operator import OperatorSpec
from .arithmetic import Arithmetic, make_arithmetic
from .linalg import LUFactorization

NORMS = ("sup", "euclidean")
STOPPING = ("residual", "error")


class IterationMethod(str, Enum):
    NEWTON = "newton"
    FIFTH = "fifth"
    SEVENTH = "seventh"


@dataclass(frozen=True)
class SolveConfig:
    residual_tol: float = 1e-12
    max_iterations: int = 50
    precision_digits: int = 16
    norm: str = "sup"
    stopping: str = "residual"

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.precision_digits < 16:
            raise ValueError("precision_digits must be at least 16")
        if self.norm not in NORMS:
            raise ValueError(f"norm must be one of {NORMS}")
        if self.stopping not in STOPPING:
            raise ValueError(f"stopping must be one of {STOPPING}")

    @classmethod
    def from_env(cls, **overrides) -> "SolveConfig":
        values = {
            "residual_tol": env_float("CONVBALL_RESIDUAL_TOL", 1e-12),
            "max_iterations": env_int("CONVBALL_MAX_ITER", 50),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def arithmetic(self) -> Arithmetic:
        return make_arithmetic(self.precision_digits)


@dataclass
class StepRecord:
    """Iterate x_n with the sub-iterates computed from it (None where the method has none)."""

    x: np.ndarray
    residual_norm: Any
    error_to_root: Any = None
    y: Optional[np.ndarray] = None
    z1: Optional[np.ndarray] = None
    z2: Optional[np.ndarray] = None

    def as_dict(self) -> Dict[str, Any]:
        def vec(v):
            return None if v is None else [float(e) for e in v]

        return {
            "x": vec(self.x),
            "y": vec(self.y),
            "z1": vec(self.z1),
            "z2": vec(self.z2),
            "residual_norm": float(self.residual_norm),
            "error_to_root": None if self.error_to_root is None else float(self.error_to_root),
        }


@dataclass
class IterationTrace:
    method: IterationMethod
    steps: List[StepRecord] = field(default_factory=list)
    converged: bool = False
    precision_digits: int = 16
    norm: str = "sup"

    @property
    def final(self) -> StepRecord:
        return self.steps[-1]

    @property
    def iterations(self) -> int:
        return len(self.steps) - 1

    def iterates(self) -> List[np.ndarray]:
        return [s.x for s in self.steps]

    def raise_for_status(self) -> None:
        if not self.converged:
            raise MaxIterationsExceeded(self)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method.value,
            "converged": self.converged,
            "iterations": self.iterations,
            "precision_digits": self.precision_digits,
            "norm": self.norm,
            "steps": [s.as_dict() for s in self.steps],
        }


def _factor(op: OperatorSpec, x: np.ndarray, arith: Arithmetic, stage: str) -> LUFactorization:
    return LUFactorization(op.jacobian(x, arith), arith, stage)


def _advance(
    method: IterationMethod, op: OperatorSpec, x: np.ndarray, fx: np.ndarray, arith: Arithmetic
) -> Tuple[np.ndarray, Optional[np.ndarray], Optional[np.ndarray], Optional[np.ndarray]]:
    """One iteration from x given T(x); returns (x_next, y, z1, z2)."""
    lx = _factor(op, x, arith, "x")
    if method is IterationMethod.NEWTON:
        return x - lx.solve(fx), None, None, None

    y = x - lx.solve(fx) / 2
    ly = _factor(op, y, arith, "y")
    z1 = x - ly.solve(fx)
    fz1 = op.evaluate(z1, arith)
    z2 = z1 - (2 * ly.solve(fz1) - lx.solve(fz1))
    if method is IterationMethod.FIFTH:
        return z2, y, z1, None

    fz2 = op.evaluate(z2, arith)
    return z2 - (2 * ly.solve(fz2) - lx.solve(fz2)), y, z1, z2


def _start(op: OperatorSpec, x, cfg: Optional[SolveConfig]) -> Tuple[np.ndarray, SolveConfig, Arithmetic]:
    cfg = cfg or SolveConfig()
    arith = cfg.arithmetic
    return op.coerce(x, arith), cfg, arith


def step_newton(op: OperatorSpec, x, precision: Optional[SolveConfig] = None) -> np.ndarray:
    x, _, arith = _start(op, x, precision)
    return _advance(IterationMethod.NEWTON, op, x, op.evaluate(x, arith), arith)[0]


def step_fifth(op: OperatorSpec, x, precision: Optional[SolveConfig] = None) -> np.ndarray:
    x, _, arith = _start(op, x, precision)
    return _advance(IterationMethod.FIFTH, op, x, op.evaluate(x, arith), arith)[0]


def step_seventh(op: OperatorSpec, x, precision: Optional[SolveConfig] = None) -> Tuple[np.ndarray, StepRecord]:
    """Two factorizations (at x and y) and three evaluations (at x, z1, z2)."""
    x, cfg, arith = _start(op, x, precision)
    fx = op.evaluate(x, arith)
    nxt, y, z1, z2 = _advance(IterationMethod.SEVENTH, op, x, fx, arith)
    root = op.root(arith)
    record = StepRecord(
        x=x,
        residual_norm=arith.norm(fx, cfg.norm),
        error_to_root=None if root is None else arith.norm(x - root, cfg.norm),
        y=y,
        z1=z1,
        z2=z2,
    )
    return nxt, record


def solve(method, op: OperatorSpec, x0, cfg: Optional[SolveConfig] = None) -> IterationTrace:
    """
    Iterate until the stopping norm drops to cfg.residual_tol or cfg.max_iterations
    is reached. The trace is returned either way; call raise_for_status() to turn
    non-convergence into MaxIterationsExceeded.
    """
    method = IterationMethod(method)
    x, cfg, arith = _start(op, x0, cfg)
    if not op.in_domain(x):
        raise DomainError(f"starting point lies outside the domain of {op.name}")
    root = op.root(arith)
    trace = IterationTrace(method=method, precision_digits=cfg.precision_digits, norm=cfg.norm)

    for n in range(cfg.max_iterations + 1):
        fx = op.evaluate(x, arith)
        res = arith.norm(fx, cfg.norm)
        err = None if root is None else arith.norm(x - root, cfg.norm)
        measure = err if (cfg.stopping == "error" and err is not None) else res
        if measure <= cfg.residual_tol:
            trace.steps.append(StepRecord(x=x, residual_norm=res, error_to_root=err))
            trace.converged = True
            break
        if n == cfg.max_iterations:
            trace.steps.append(StepRecord(x=x, residual_norm=res, error_to_root=err))
            break
        nxt, y, z1, z2 = _advance(method, op, x, fx, arith)
        trace.steps.append(StepRecord(x=x, residual_norm=res, error_to_root=err, y=y, z1=z1, z2=z2))
        if not op.in_domain(nxt):
            raise DomainError(f"iterate {n + 1} of {method.value} left the domain of {op.name}")
        x = nxt

    debug(f"{method.value} on {op.name}: {trace.iterations} iterations, converged={trace.converged}")
    return trace
