import numpy as np
import pytest

from src.convball_utils.errors import DomainError
from src.majorant.constants import ContinuityClass, ContinuityConstants, RootSearchConfig
from src.majorant.functions import (
    domain_limit,
    eval_gap,
    eval_majorant,
    eval_p,
    hoelder_bounds,
    majorant_values,
    rho1_closed_form,
)
from src.problems.tables import HAMMERSTEIN_KAPPA

PSI = 96.6628


def test_constants_validation():
    with pytest.raises(ValueError):
        ContinuityConstants.lipschitz(2.0, 1.0)
    with pytest.raises(ValueError):
        ContinuityConstants.lipschitz(0.0, 1.0)
    with pytest.raises(ValueError):
        ContinuityConstants.hoelder(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        ContinuityConstants.hoelder(1.0, 1.0, 1.5)
    with pytest.raises(ValueError):
        ContinuityConstants(ContinuityClass.LIPSCHITZ, 1.0, 1.0, 0.5)
    k = ContinuityConstants("hoelder", 1, 2, 0.5)
    assert k.kind is ContinuityClass.HOELDER
    assert not k.is_lipschitz
    assert k.as_dict() == {"class": "hoelder", "c0": 1.0, "c": 2.0, "q": 0.5}


@pytest.mark.parametrize(
    "constants, expected",
    [
        (ContinuityConstants.lipschitz(PSI, PSI), 0.00295578),
        (ContinuityConstants.hoelder(0.0608658, 0.094888, 1.0), 4.04772),
        (ContinuityConstants.hoelder(HAMMERSTEIN_KAPPA, HAMMERSTEIN_KAPPA, 1.0), 0.503957),
    ],
)
def test_rho1_closed_form(constants, expected):
    rho1 = rho1_closed_form(constants)
    assert rho1 == pytest.approx(expected, rel=1e-5)
    assert eval_majorant(constants, 1, rho1) == pytest.approx(1.0, abs=1e-12)


def test_majorants_at_zero():
    k = ContinuityConstants.lipschitz(1.0, 2.0)
    assert eval_majorant(k, 1, 0.0) == pytest.approx(0.5)
    for i in (2, 3, 4):
        assert eval_majorant(k, i, 0.0) == 0.0
        assert eval_gap(k, i, 0.0) == -1.0
    assert eval_p(k, 0.0) == 0.0


def test_published_crossings_table1():
    k = ContinuityConstants.lipschitz(PSI, PSI)
    assert eval_majorant(k, 1, 0.001) == pytest.approx(0.633758, rel=1e-5)
    assert eval_majorant(k, 2, 0.00246894) == pytest.approx(1.0, abs=1e-4)
    assert eval_majorant(k, 3, 0.00217353) == pytest.approx(1.0, abs=1e-3)


def test_pole_handling():
    k = ContinuityConstants.lipschitz(2.0, 3.0)
    limit = domain_limit(k)
    assert limit == pytest.approx(0.5)
    with pytest.raises(DomainError):
        eval_majorant(k, 1, limit)
    with pytest.raises(ValueError):
        eval_majorant(k, 1, -0.1)
    values = majorant_values(k, 4, np.array([0.0, limit, 2 * limit]))
    assert values[0] == 0.0
    assert np.isinf(values[1]) and np.isinf(values[2])


def test_index_checked():
    k = ContinuityConstants.lipschitz(1.0, 1.0)
    with pytest.raises(ValueError):
        eval_majorant(k, 5, 0.1)
    with pytest.raises(ValueError):
        majorant_values(k, 0, [0.1])


def test_lipschitz_hoelder_agree_at_q1(rng):
    for _ in range(50):
        c0 = float(rng.uniform(0.05, 50.0))
        c = c0 * float(rng.uniform(1.0, 3.0))
        lip = ContinuityConstants.lipschitz(c0, c)
        hol = ContinuityConstants.hoelder(c0, c, 1.0)
        grid = np.linspace(0.0, domain_limit(lip), 1000)
        for i in (1, 2, 3, 4):
            np.testing.assert_allclose(majorant_values(lip, i, grid), majorant_values(hol, i, grid), rtol=0, atol=1e-12)
        for a in rng.uniform(0.0, domain_limit(lip), 20):
            assert abs(eval_p(lip, a) - eval_p(hol, a)) < 1e-12


def test_scalar_matches_vectorized():
    k = ContinuityConstants.hoelder(0.3, 0.7, 0.6)
    grid = np.linspace(0.01, 0.5, 25)
    vec = majorant_values(k, 3, grid)
    for a, v in zip(grid, vec):
        if np.isfinite(v):
            assert eval_majorant(k, 3, a) == pytest.approx(v, rel=1e-14)


def test_hoelder_bounds():
    k = ContinuityConstants.hoelder(0.5, 1.0, 0.5)
    assert hoelder_bounds(k, 0.0, 0.3) == (1.0, 1.0, 0.0)
    first, second, third = hoelder_bounds(k, 0.25, 1.0)
    assert first == pytest.approx(1.25)
    assert second == pytest.approx(1.25)
    assert third == pytest.approx((1.0 + 0.5 / 1.5 * 0.5) * 0.25)
    with pytest.raises(ValueError):
        hoelder_bounds(k, 0.1, 2.0)


def test_root_search_config_from_env(monkeypatch):
    monkeypatch.setenv("CONVBALL_GRID_POINTS", "500")
    monkeypatch.setenv("CONVBALL_ABS_TOL", "1e-10")
    cfg = RootSearchConfig.from_env()
    assert cfg.grid_points == 500
    assert cfg.abs_tol == 1e-10
    assert RootSearchConfig.from_env(grid_points=2000).grid_points == 2000

    monkeypatch.setenv("CONVBALL_GRID_POINTS", "many")
    with pytest.raises(EnvironmentError):
        RootSearchConfig.from_env()
