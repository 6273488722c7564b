"""
corpus.py — Built-in operators: a log-polynomial with a degenerate point at 0,
the Planck peak-wavelength equation, a Nystrom-discretized Hammerstein equation
with the Green kernel, and affine maps.
"""

from typing import Dict, Optional

import numpy as np

from ..solvers.arithmetic import Arithmetic
from .operator import Ball, OperatorSpec
from .quadrature import QuadratureRule, gauss_legendre_rule

# 4.965114 carried to double precision so that |T(x*)| <= 1e-12 holds
PLANCK_ROOT = 4.965114231744276


def logpoly_problem() -> OperatorSpec:
    """f(x) = x^3 log(x^2) + x^5 - x^4 with f(0) = 0, on D = [-1/2, 5/2]."""

    def residual(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        t = x[0]
        if t == 0:
            return arith.zeros(1)
        return arith.vector([t ** 3 * arith.log(t * t) + t ** 5 - t ** 4])

    def jacobian(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        t = x[0]
        if t == 0:
            return arith.matrix([[0]])
        return arith.matrix([[3 * t ** 2 * arith.log(t * t) + 5 * t ** 4 - 4 * t ** 3 + 2 * t ** 2]])

    return OperatorSpec(
        name="logpoly",
        dimension=1,
        residual_fn=residual,
        jacobian_fn=jacobian,
        known_root=np.array([1.0]),
        domain=Ball(np.array([1.0]), 1.5),
        description="x^3 log(x^2) + x^5 - x^4",
    )


def planck_problem() -> OperatorSpec:
    """f(x) = exp(-x) - 1 + x/5; the positive root gives the peak wavelength."""

    def residual(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        t = x[0]
        return arith.vector([arith.exp(-t) - 1 + t / 5])

    def jacobian(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        t = x[0]
        return arith.matrix([[-arith.exp(-t) + arith.scalar(1) / 5]])

    return OperatorSpec(
        name="planck",
        dimension=1,
        residual_fn=residual,
        jacobian_fn=jacobian,
        known_root=np.array([PLANCK_ROOT]),
        domain=Ball(np.array([PLANCK_ROOT]), None),
        description="exp(-x) - 1 + x/5",
    )


def green_kernel(s: float, t: float) -> float:
    """G(s, t) = (1 - s) t for t <= s, s (1 - t) for s <= t."""
    if not (0.0 <= s <= 1.0 and 0.0 <= t <= 1.0):
        raise ValueError(f"kernel arguments must lie in [0, 1], got ({s}, {t})")
    return (1.0 - s) * t if t <= s else s * (1.0 - t)


def kernel_matrix(rule: QuadratureRule) -> np.ndarray:
    """K[i, j] = w_j G(s_i, s_j)."""
    s = rule.nodes
    return np.array([[rule.weights[j] * green_kernel(s[i], s[j]) for j in range(s.size)] for i in range(s.size)])


def hammerstein_problem(n: int = 16, rule: Optional[QuadratureRule] = None) -> OperatorSpec:
    """
    Nystrom discretization of
        T(x)(s) = x(s) - int_0^1 G(s, t) (x(t)^{5/2} + x(t)^2 / 2) dt
    with the odd extension sign(t)|t|^{5/2}, whose derivative is (5/2)|t|^{3/2}.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rule = rule or gauss_legendre_rule(n)
    if rule.size != n:
        raise ValueError(f"rule has {rule.size} nodes, expected {n}")
    kernel = kernel_matrix(rule)
    converted: Dict[int, np.ndarray] = {}

    def weights(arith: Arithmetic) -> np.ndarray:
        key = arith.digits
        if key not in converted:
            converted[key] = arith.matrix(kernel)
        return converted[key]

    def residual(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        source = arith.signed_power(x, 2.5) + x * x / 2
        return x - arith.dot(weights(arith), source)

    def jacobian(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        slope = 5 * arith.abs_power(x, 1.5) / 2 + x
        return arith.identity(n) - weights(arith) * slope[np.newaxis, :]

    return OperatorSpec(
        name=f"hammerstein{n}",
        dimension=n,
        residual_fn=residual,
        jacobian_fn=jacobian,
        known_root=np.zeros(n),
        domain=Ball(np.zeros(n), 1.0),
        description="x(s) - int G(s,t) (x^{5/2} + x^2/2) dt",
    )


def affine_problem(matrix, rhs, name: str = "affine") -> OperatorSpec:
    """T(x) = A x - b; the known root is A^-1 b."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float).reshape(-1)
    n = b.size
    if a.shape != (n, n):
        raise ValueError(f"matrix shape {a.shape} does not match rhs length {n}")

    def residual(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        return arith.dot(arith.matrix(a), x) - arith.vector(b)

    def jacobian(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        return arith.matrix(a)

    return OperatorSpec(
        name=name,
        dimension=n,
        residual_fn=residual,
        jacobian_fn=jacobian,
        known_root=np.linalg.solve(a, b),
        description="A x - b",
    )
