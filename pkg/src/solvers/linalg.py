"""
linalg.py — Dense LU factorization with partial pivoting.

Works on float64 arrays and on object arrays of mpmath numbers alike.
The Jacobian inverses of the iterations are always applied through solve();
no explicit inverse is ever formed.
"""

from typing import Optional

import numpy as np

from ..convball_utils.errors import SingularJacobianError
from .arithmetic import Arithmetic, DoubleArithmetic

PIVOT_FACTOR = 1e3


class LUFactorization:
    """PA = LU, stored in place: unit-lower multipliers below the diagonal, U on and above."""

    def __init__(self, matrix: np.ndarray, arith: Optional[Arithmetic] = None, stage: str = "x"):
        self.arith = arith or DoubleArithmetic()
        matrix = np.asarray(matrix)
        a = np.array(matrix, dtype=object if matrix.dtype == object else float, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0]
        self.n = n
        self.perm = list(range(n))

        scale = max((abs(v) for v in a.flat), default=0)
        threshold = PIVOT_FACTOR * self.arith.eps * scale
        if scale == 0:
            raise SingularJacobianError(stage, f"zero Jacobian at sub-step '{stage}'")

        for k in range(n):
            p = max(range(k, n), key=lambda r: abs(a[r, k]))
            if abs(a[p, k]) <= threshold:
                raise SingularJacobianError(stage, f"pivot {float(abs(a[p, k])):.3e} below threshold at column {k} (sub-step '{stage}')")
            if p != k:
                a[[k, p], :] = a[[p, k], :]
                self.perm[k], self.perm[p] = self.perm[p], self.perm[k]
            for r in range(k + 1, n):
                if a[r, k] != 0:
                    lam = a[r, k] / a[k, k]
                    a[r, k] = lam
                    a[r, k + 1:] = a[r, k + 1:] - lam * a[k, k + 1:]
        self.lu = a

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Forward then back substitution; returns a new vector."""
        a = self.lu
        n = self.n
        x = np.array([rhs[i] for i in self.perm], dtype=a.dtype)
        for i in range(1, n):
            x[i] = x[i] - np.dot(a[i, :i], x[:i])
        for i in range(n - 1, -1, -1):
            x[i] = (x[i] - np.dot(a[i, i + 1:], x[i + 1:])) / a[i, i]
        return x
