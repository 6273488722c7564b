"""
functions.py — Scalar majorant functions of the seventh-order scheme.

One parameterization covers both continuity classes: with s = a**q,
  mu_1(a) = [c s/(q+1) + (1 + c0 s/(q+1))/2] / (1 - c0 s)
  p(a)    = c0 mu_1(a)**q s
  mu_2(a) = [c s/(q+1) + c (1 + mu_1**q)(1 + c0 s/(q+1)) s / (1 - p)] / (1 - c0 s)
and mu_3, mu_4 follow from mu_2, mu_3 through the same three-term recursion.
Lipschitz constants are the q = 1 case (psi0 = c0, psi = c); the factor
psi[a + eta_1(a) a] is written as c (1 + mu_1**q) s.
"""

from typing import Dict, Tuple

import numpy as np

from ..convball_utils.errors import DomainError
from .constants import ContinuityConstants, check_index


def domain_limit(constants: ContinuityConstants) -> float:
    """1/psi0 for Lipschitz, (1/kappa0)**(1/q) for Hoelder."""
    return (1.0 / constants.c0) ** (1.0 / constants.q)


def rho1_closed_form(constants: ContinuityConstants) -> float:
    c0, c, q = constants.c0, constants.c, constants.q
    return ((q + 1.0) / (2.0 * c + c0 * (3.0 + 2.0 * q))) ** (1.0 / q)


def _next_majorant(c0, c, q, s, mu1q, dp, d0, prev):
    prevq = prev ** q
    w = c0 * prevq * s
    dw = 1.0 - w
    lift = 1.0 + c0 / (q + 1.0) * prevq * s
    first = c * prevq * s / ((q + 1.0) * dw)
    second = c * (mu1q + prevq) * s / dw * lift / dp
    third = c * (1.0 + mu1q) * s / (d0 * dp) * lift
    return (first + second + third) * prev, dw > 0


def _chain(constants: ContinuityConstants, a: np.ndarray) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """Values and validity masks of p and mu_1..mu_4 on an array of radii."""
    c0, c, q = constants.c0, constants.c, constants.q
    s = a ** q
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        d0 = 1.0 - c0 * s
        ok = d0 > 0
        mu1 = (c * s / (q + 1.0) + (1.0 + c0 / (q + 1.0) * s) / 2.0) / d0
        mu1q = np.where(ok, mu1, 0.0) ** q
        p = c0 * mu1q * s
        out = {"p": (p, ok.copy()), 1: (mu1, ok.copy())}

        dp = 1.0 - p
        ok = ok & (dp > 0)
        mu2 = (c * s / (q + 1.0) + c * (1.0 + mu1q) * (c0 / (q + 1.0) * s + 1.0) * s / dp) / d0
        out[2] = (mu2, ok.copy())

        prev = np.where(ok, mu2, 0.0)
        for i in (3, 4):
            value, positive = _next_majorant(c0, c, q, s, mu1q, dp, d0, prev)
            ok = ok & positive
            out[i] = (value, ok.copy())
            prev = np.where(ok, value, 0.0)
    return out


def majorant_values(constants: ContinuityConstants, i: int, a) -> np.ndarray:
    """Vectorized mu_i / eta_i; entries at or beyond a pole are +inf."""
    check_index(i)
    grid = np.asarray(a, dtype=float)
    value, ok = _chain(constants, grid)[i]
    return np.where(ok, value, np.inf)


def _scalar(constants: ContinuityConstants, key, a: float) -> float:
    if a < 0:
        raise ValueError(f"radius must be nonnegative, got {a}")
    value, ok = _chain(constants, np.asarray(float(a)))[key]
    if not bool(ok):
        raise DomainError(f"a={a} lies at or beyond a pole of the majorant chain")
    return float(value)


def eval_p(constants: ContinuityConstants, a: float) -> float:
    return _scalar(constants, "p", a)


def eval_majorant(constants: ContinuityConstants, i: int, a: float) -> float:
    return _scalar(constants, check_index(i), a)


def eval_gap(constants: ContinuityConstants, i: int, a: float) -> float:
    """H_i(a) = eta_i(a) - 1 (M_i for Hoelder)."""
    return eval_majorant(constants, i, a) - 1.0


def hoelder_bounds(constants: ContinuityConstants, dist: float, t: float) -> Tuple[float, float, float]:
    """
    The three estimates used around x*:
      1 + k0 d**q,  1 + k0 t**q d**q,  (1 + k0/(q+1) d**q) d
    """
    if dist < 0:
        raise ValueError("dist must be nonnegative")
    if not (0.0 <= t <= 1.0):
        raise ValueError("t must lie in [0, 1]")
    k0, q = constants.c0, constants.q
    dq = dist ** q
    return 1.0 + k0 * dq, 1.0 + k0 * (t ** q) * dq, (1.0 + k0 / (q + 1.0) * dq) * dist
