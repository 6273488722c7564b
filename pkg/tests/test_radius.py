import numpy as np
import pytest

from src.convball_utils.errors import NoRootError
from src.majorant.constants import ContinuityConstants, RootSearchConfig
from src.majorant.functions import domain_limit, eval_majorant, majorant_values, rho1_closed_form
from src.majorant.radius import grid_scan_root, radius_report, smallest_positive_root
from src.problems.tables import HAMMERSTEIN_KAPPA, LOGPOLY_PSI, LOGPOLY_RADII, ROW_LABELS, TABLES


def test_report_matches_published_rows(table):
    report = radius_report(table.constants)
    radii = report.radii_dict()
    for label, _ in table.rows():
        assert radii[label] == pytest.approx(table.target(label), rel=0.01), label


def test_hammerstein_radii_are_rescaled_logpoly_radii():
    # equal constants in both tables, so every ratio rho_i / rho_1 must agree
    report = radius_report(TABLES[3].constants)
    factor = LOGPOLY_PSI / HAMMERSTEIN_KAPPA
    for i, published in enumerate(LOGPOLY_RADII[:4], start=1):
        assert report.radius(i) == pytest.approx(published * factor, rel=1e-4), i
    assert report.radius(3) == pytest.approx(0.370583, rel=1e-5)
    assert report.radius(4) == pytest.approx(0.354861, rel=1e-5)

    published = dict(TABLES[3].rows())
    assert abs(report.radius(3) - published["rho_3"]) / published["rho_3"] > 0.015
    assert abs(report.radius(4) - published["rho_4"]) / published["rho_4"] > 0.015
    assert set(TABLES[3].known_deviations) == {"rho_3", "rho_4", "rho"}


def test_scaling_constants_rescales_radii(rng, constants_factory):
    cfg = RootSearchConfig()
    checked = 0
    for n in range(40):
        constants = constants_factory(rng, "lipschitz" if n % 2 else "hoelder")
        factor = float(rng.uniform(0.25, 4.0))
        try:
            base = radius_report(constants, cfg)
            scaled = radius_report(constants.scaled(factor), cfg)
        except NoRootError:
            continue
        checked += 1
        shrink = factor ** (-1.0 / constants.q)
        for i in (1, 2, 3, 4):
            assert scaled.radius(i) == pytest.approx(base.radius(i) * shrink, rel=1e-6), (n, i)
    assert checked >= 20


def test_lipschitz_scaling_divides_radii():
    base = radius_report(ContinuityConstants.lipschitz(1.0, 1.0))
    scaled = radius_report(ContinuityConstants.lipschitz(1.0, 1.0).scaled(LOGPOLY_PSI))
    for i in (2, 3, 4):
        assert scaled.radius(i) * LOGPOLY_PSI == pytest.approx(base.radius(i), rel=1e-8)


def test_table1_tight():
    report = radius_report(ContinuityConstants.lipschitz(96.6628, 96.6628))
    assert report.radius(1) == pytest.approx(0.00295578, rel=1e-5)
    assert report.radius(2) == pytest.approx(0.00246894, rel=1e-4)
    assert report.radius(3) == pytest.approx(0.00217353, rel=1e-4)
    assert report.rho_min == report.radius(4)


def test_ordering_on_random_constants(rng, constants_factory):
    cfg = RootSearchConfig()
    succeeded = 0
    for n in range(200):
        constants = constants_factory(rng, "lipschitz" if n % 2 else "hoelder")
        try:
            report = radius_report(constants, cfg)
        except NoRootError:
            continue
        succeeded += 1
        r1, r2, r3, r4 = report.rho
        assert 0 < r4 <= r3 <= r2 <= r1 < report.domain_limit
        assert report.rho_min == min(report.rho)
        for i in (1, 2, 3, 4):
            assert abs(eval_majorant(constants, i, report.radius(i)) - 1.0) <= 1e-8
    assert succeeded >= 100


def test_bisection_agrees_with_dense_grid(table):
    constants = table.constants
    report = radius_report(constants)
    upper = domain_limit(constants) * (1.0 - 1e-9)
    for i in (1, 2, 3, 4):
        lo, hi = grid_scan_root(constants, i, upper, 10**6)
        cell = upper / 10**6
        rho = report.radius(i)
        assert lo - 1e-12 <= rho <= hi + 1e-12, (i, lo, rho, hi)
        assert hi - lo <= cell * (1 + 1e-9)
        upper = rho


def test_root_certificate(table, rng):
    constants = table.constants
    report = radius_report(constants)
    for i in (1, 2, 3, 4):
        rho = report.radius(i)
        for a in rng.uniform(0.0, rho * (1 - 1e-9), 100):
            assert eval_majorant(constants, i, a) < 1.0


def test_majorants_increase_below_their_radius(table):
    constants = table.constants
    report = radius_report(constants)
    for i in (1, 2, 3, 4):
        grid = np.linspace(0.0, report.radius(i), 200, endpoint=False)
        values = majorant_values(constants, i, grid)
        assert np.all(np.diff(values) > 0), i


def test_smallest_positive_root_matches_closed_form(rng, constants_factory):
    for n in range(50):
        constants = constants_factory(rng, "lipschitz" if n % 2 else "hoelder")
        rho1 = smallest_positive_root(constants, 1, domain_limit(constants))
        assert rho1 == pytest.approx(rho1_closed_form(constants), abs=1e-11), constants


def test_no_root_in_short_window():
    constants = ContinuityConstants.lipschitz(1.0, 1.0)
    with pytest.raises(NoRootError) as info:
        smallest_positive_root(constants, 2, 1e-3)
    assert info.value.index == 2


def test_empty_window_rejected():
    constants = ContinuityConstants.lipschitz(1.0, 1.0)
    with pytest.raises(ValueError):
        smallest_positive_root(constants, 2, 0.0)


def test_uniqueness_fields():
    lip = radius_report(ContinuityConstants.lipschitz(2.0, 3.0))
    assert lip.uniqueness_sup == pytest.approx(0.5)
    assert lip.uniqueness_closed is False
    assert lip.uniqueness_proof_bound == pytest.approx(1.0)

    hol = radius_report(ContinuityConstants.hoelder(2.0, 3.0, 1.0))
    assert hol.uniqueness_sup == pytest.approx(1.0)
    assert hol.uniqueness_closed is True
    assert hol.rho == lip.rho


def test_report_dict_layout():
    report = radius_report(ContinuityConstants.hoelder(0.0608658, 0.094888, 1.0))
    doc = report.as_dict()
    assert set(doc) == {"constants", "radii", "uniqueness"}
    assert list(doc["radii"]) == list(ROW_LABELS) + ["domain_limit"]
    assert doc["uniqueness"]["closed"] is True
