"""
radius.py — Smallest positive roots of the gap functions and convergence-ball reports.
"""

from typing import Optional, Tuple

import numpy as np

from ..convball_utils.errors import NoRootError
from ..convball_utils.utils import debug
from .constants import ContinuityConstants, RadiusReport, RootSearchConfig, check_index
from .functions import domain_limit, eval_gap, majorant_values, rho1_closed_form


def grid_scan_root(
    constants: ContinuityConstants, i: int, search_upper: float, grid_points: int
) -> Tuple[float, float]:
    """First-sign-change bracket (lo, hi] of eta_i - 1 on a uniform grid over (0, search_upper]."""
    grid = np.linspace(0.0, search_upper, grid_points + 1)[1:]
    gaps = majorant_values(constants, i, grid) - 1.0
    crossings = np.flatnonzero(gaps >= 0.0)
    if crossings.size == 0:
        raise NoRootError(i, f"H_{i} stays negative on (0, {search_upper:.6g}]")
    k = int(crossings[0])
    lo = float(grid[k - 1]) if k > 0 else 0.0
    return lo, float(grid[k])


def _gap_is_negative(constants: ContinuityConstants, i: int, a: float) -> bool:
    return bool(majorant_values(constants, i, a) < 1.0)


def smallest_positive_root(
    constants: ContinuityConstants,
    i: int,
    search_upper: float,
    cfg: Optional[RootSearchConfig] = None,
) -> float:
    """Leftmost zero of eta_i - 1 on (0, search_upper], bracketed on a grid then bisected."""
    cfg = cfg or RootSearchConfig()
    check_index(i)
    if eval_gap(constants, i, 0.0) >= 0.0:
        raise ValueError(f"H_{i}(0) must be negative")

    upper = min(search_upper, domain_limit(constants) * (1.0 - cfg.domain_margin))
    if not upper > 0:
        raise ValueError(f"search window (0, {search_upper}] is empty")
    lo, hi = grid_scan_root(constants, i, upper, cfg.grid_points)
    debug(f"H_{i}: bracket [{lo:.6g}, {hi:.6g}]")

    while hi - lo > cfg.abs_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _gap_is_negative(constants, i, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def radius_report(constants: ContinuityConstants, cfg: Optional[RootSearchConfig] = None) -> RadiusReport:
    """
    rho_1 from the closed form, then rho_2, rho_3, rho_4 each searched below the
    previous radius, which keeps every gap negative at the left end of its window.
    """
    cfg = cfg or RootSearchConfig()
    limit = domain_limit(constants)
    rhos = [rho1_closed_form(constants)]
    for i in (2, 3, 4):
        try:
            rhos.append(smallest_positive_root(constants, i, rhos[-1], cfg))
        except NoRootError as exc:
            raise NoRootError(i, f"radius search failed at index i={i}: {exc}") from exc

    if constants.is_lipschitz:
        # theorem interval [rho, 1/psi0) is open; the uniqueness argument itself only needs rho < 2/psi0
        uniqueness_sup, closed, proof_bound = limit, False, 2.0 / constants.c0
    else:
        uniqueness_sup = ((1.0 + constants.q) / constants.c0) ** (1.0 / constants.q)
        closed, proof_bound = True, uniqueness_sup

    return RadiusReport(
        rho=tuple(rhos),
        rho_min=min(rhos),
        uniqueness_sup=uniqueness_sup,
        uniqueness_closed=closed,
        uniqueness_proof_bound=proof_bound,
        domain_limit=limit,
        constants=constants,
    )
