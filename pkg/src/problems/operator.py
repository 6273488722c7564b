"""
operator.py — Finite-dimensional operators T with Jacobian T', an optional
known root x* and a declared domain ball.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..solvers.arithmetic import Arithmetic, make_arithmetic

ResidualFn = Callable[[np.ndarray, Arithmetic], np.ndarray]
JacobianFn = Callable[[np.ndarray, Arithmetic], np.ndarray]


@dataclass(frozen=True, eq=False)
class Ball:
    """Sup-norm ball; radius None means unbounded."""

    center: np.ndarray
    radius: Optional[float] = None

    def contains(self, x: Sequence) -> bool:
        if self.radius is None:
            return True
        dist = max(abs(float(xi) - float(ci)) for xi, ci in zip(x, self.center))
        return dist <= self.radius

    def as_dict(self):
        return {"center": [float(c) for c in self.center], "radius": self.radius}


@dataclass(frozen=True, eq=False)
class OperatorSpec:
    name: str
    dimension: int
    residual_fn: ResidualFn = field(repr=False)
    jacobian_fn: JacobianFn = field(repr=False)
    known_root: Optional[np.ndarray] = None
    domain: Optional[Ball] = None
    description: str = ""

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.known_root is not None:
            root = np.asarray(self.known_root, dtype=float).reshape(-1)
            if root.size != self.dimension:
                raise ValueError(f"known root has {root.size} components, expected {self.dimension}")
            object.__setattr__(self, "known_root", root)
        if self.domain is None:
            object.__setattr__(self, "domain", Ball(np.zeros(self.dimension), None))

    def coerce(self, x, arith: Arithmetic) -> np.ndarray:
        """Convert x into a vector of the given arithmetic."""
        extended = arith.digits > 16
        if isinstance(x, np.ndarray) and x.dtype.kind in "fO" and (x.dtype == object) == extended:
            return x.reshape(-1)
        return arith.vector(np.asarray(x, dtype=object).reshape(-1).tolist())

    def evaluate(self, x, arith: Optional[Arithmetic] = None) -> np.ndarray:
        """T(x)."""
        arith = arith or make_arithmetic()
        return np.asarray(self.residual_fn(self.coerce(x, arith), arith)).reshape(-1)

    def jacobian(self, x, arith: Optional[Arithmetic] = None) -> np.ndarray:
        """T'(x) as a dimension x dimension matrix."""
        arith = arith or make_arithmetic()
        return np.asarray(self.jacobian_fn(self.coerce(x, arith), arith)).reshape(self.dimension, self.dimension)

    @property
    def has_root(self) -> bool:
        return self.known_root is not None

    def root(self, arith: Optional[Arithmetic] = None) -> Optional[np.ndarray]:
        if self.known_root is None:
            return None
        arith = arith or make_arithmetic()
        return arith.vector([repr(float(v)) for v in self.known_root])

    def in_domain(self, x) -> bool:
        return self.domain.contains(x)
