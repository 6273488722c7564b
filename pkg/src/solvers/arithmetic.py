"""
arithmetic.py — Real-number backends for the iterations.

DoubleArithmetic works on float64 numpy arrays. ExtendedArithmetic keeps mpmath
numbers from a private MPContext in object arrays, so each instance has its own
precision and no global mpmath state is touched.
"""

from functools import lru_cache
from typing import Iterable

import mpmath
import numpy as np

from ..convball_utils.errors import EvalDomainError

DOUBLE_DIGITS = 16


class Arithmetic:
    """Field operations plus exp/log/pow/sqrt/sin/cos/abs and an epsilon query."""

    digits: int = DOUBLE_DIGITS

    def scalar(self, value):
        raise NotImplementedError

    def vector(self, values: Iterable) -> np.ndarray:
        raise NotImplementedError

    def matrix(self, rows) -> np.ndarray:
        raise NotImplementedError

    def _map(self, fn, v):
        raise NotImplementedError

    @property
    def eps(self):
        raise NotImplementedError

    def zeros(self, n: int) -> np.ndarray:
        return self.vector([0] * n)

    def identity(self, n: int) -> np.ndarray:
        return self.matrix(np.eye(n))

    def exp(self, v):
        return self._map(self._exp, v)

    def log(self, v):
        return self._map(self._log, v)

    def sqrt(self, v):
        return self._map(self._sqrt, v)

    def sin(self, v):
        return self._map(self._sin, v)

    def cos(self, v):
        return self._map(self._cos, v)

    def power(self, base, exponent):
        return self._map(lambda b: self._pow(b, exponent), base)

    def signed_power(self, v, exponent):
        """sign(t) |t|**exponent, the odd extension of a fractional power."""
        return self._map(lambda t: self._pow(abs(t), exponent) * (1 if t > 0 else (-1 if t < 0 else 0)), v)

    def abs_power(self, v, exponent):
        return self._map(lambda t: self._pow(abs(t), exponent), v)

    def norm(self, v, kind: str = "sup"):
        v = np.asarray(v)
        if v.size == 0:
            return self.scalar(0)
        if kind == "sup":
            return max(abs(e) for e in v.flat)
        if kind == "euclidean":
            return self._sqrt(sum(e * e for e in v.flat))
        raise ValueError(f"unknown norm {kind!r}")

    def dot(self, a, b):
        return np.dot(a, b)

    def to_float(self, value) -> float:
        return float(value)


class DoubleArithmetic(Arithmetic):
    digits = DOUBLE_DIGITS

    def scalar(self, value):
        return float(value)

    def vector(self, values: Iterable) -> np.ndarray:
        return np.array([float(v) for v in values], dtype=float)

    def matrix(self, rows) -> np.ndarray:
        return np.array(rows, dtype=float)

    @property
    def eps(self) -> float:
        return float(np.finfo(float).eps)

    def _map(self, fn, v):
        if isinstance(v, np.ndarray):
            return np.array([fn(e) for e in v.flat], dtype=float).reshape(v.shape)
        return fn(v)

    @staticmethod
    def _exp(x):
        return float(np.exp(x))

    @staticmethod
    def _log(x):
        if x <= 0:
            raise EvalDomainError(f"log of nonpositive value {x}")
        return float(np.log(x))

    @staticmethod
    def _sqrt(x):
        if x < 0:
            raise EvalDomainError(f"sqrt of negative value {x}")
        return float(np.sqrt(x))

    @staticmethod
    def _sin(x):
        return float(np.sin(x))

    @staticmethod
    def _cos(x):
        return float(np.cos(x))

    @staticmethod
    def _pow(b, e):
        try:
            value = float(b) ** float(e)
        except ZeroDivisionError:
            raise EvalDomainError(f"{b} ** {e} is undefined")
        except OverflowError:
            raise EvalDomainError(f"{b} ** {e} overflows double precision")
        if isinstance(value, complex):
            raise EvalDomainError(f"{b} ** {e} is not real")
        return value


class ExtendedArithmetic(Arithmetic):
    """Software extended precision with `digits` significant decimal digits."""

    def __init__(self, digits: int):
        if digits <= DOUBLE_DIGITS:
            raise ValueError(f"extended precision needs more than {DOUBLE_DIGITS} digits")
        self.digits = int(digits)
        self.ctx = mpmath.MPContext()
        self.ctx.dps = self.digits

    def scalar(self, value):
        # decimal literals arrive as text so they are read at full precision
        return self.ctx.mpf(value)

    def vector(self, values: Iterable) -> np.ndarray:
        items = [self.scalar(v) for v in values]
        out = np.empty(len(items), dtype=object)
        out[:] = items
        return out

    def matrix(self, rows) -> np.ndarray:
        src = np.asarray(rows, dtype=object)
        out = np.empty(src.shape, dtype=object)
        for idx, value in np.ndenumerate(src):
            out[idx] = self.scalar(value)
        return out

    @property
    def eps(self):
        return self.ctx.eps

    def _map(self, fn, v):
        if isinstance(v, np.ndarray):
            out = np.empty(v.shape, dtype=object)
            for idx, value in np.ndenumerate(v):
                out[idx] = fn(value)
            return out
        return fn(v)

    def _exp(self, x):
        return self.ctx.exp(x)

    def _log(self, x):
        if x <= 0:
            raise EvalDomainError(f"log of nonpositive value {x}")
        return self.ctx.log(x)

    def _sqrt(self, x):
        if x < 0:
            raise EvalDomainError(f"sqrt of negative value {x}")
        return self.ctx.sqrt(x)

    def _sin(self, x):
        return self.ctx.sin(x)

    def _cos(self, x):
        return self.ctx.cos(x)

    def _pow(self, b, e):
        b = self.ctx.mpf(b)
        if b == 0 and e < 0:
            raise EvalDomainError(f"0 ** {e} is undefined")
        if b < 0 and int(e) != e:
            raise EvalDomainError(f"{b} ** {e} is not real")
        if int(e) == e:
            return b ** int(e)
        return self.ctx.power(b, self.ctx.mpf(e))


@lru_cache(maxsize=None)
def make_arithmetic(digits: int = DOUBLE_DIGITS) -> Arithmetic:
    """16 digits selects native double; anything above uses mpmath."""
    if digits < DOUBLE_DIGITS:
        raise ValueError(f"precision must be at least {DOUBLE_DIGITS} digits")
    if digits == DOUBLE_DIGITS:
        return DoubleArithmetic()
    return ExtendedArithmetic(digits)
