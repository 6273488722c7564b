"""
quadrature.py — Gauss-Legendre rules on the unit interval.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_legendre_rule(n: int) -> QuadratureRule:
    """n-point rule on (0, 1); exact for polynomials of degree <= 2n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    p, w = np.polynomial.legendre.leggauss(n)
    # [-1, 1] -> [0, 1]
    return QuadratureRule(nodes=(p + 1.0) / 2.0, weights=w / 2.0)
