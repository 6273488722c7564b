import pytest

from src.convball_utils.errors import BallViolationError, InsufficientDataError, MissingRootError
from src.majorant.radius import radius_report
from src.problems.corpus import PLANCK_ROOT, logpoly_problem, planck_problem
from src.problems.expressions import parse_system
from src.problems.tables import TABLES
from src.solvers.analysis import (
    BOUND_LAYOUT,
    epsilon_floor,
    estimate_order,
    refine_root,
    verify_error_bounds,
)
from src.solvers.methods import IterationMethod, SolveConfig, solve


def test_order_of_exact_sequences():
    assert estimate_order([1e-1, 1e-2, 1e-4, 1e-8]).coc == pytest.approx(2.0)
    cubic = estimate_order([1e-1, 1e-3, 1e-9, 1e-27])
    assert cubic.coc == pytest.approx(3.0)
    assert cubic.samples_used == 4


def test_order_uses_decreasing_tail_above_floor():
    est = estimate_order([1e-1, 1e-3, 1e-2, 1e-4, 1e-8, 1e-16, 0.0], floor=1e-12)
    assert est.coc == pytest.approx(2.0)
    assert est.samples_used == 3


def test_order_needs_three_errors():
    with pytest.raises(InsufficientDataError):
        estimate_order([1e-1, 1e-2])
    with pytest.raises(InsufficientDataError):
        estimate_order([1e-1, 1e-2, 1e-20], floor=1e-15)


def _coc(method: str, digits: int, x0: str = "4.3") -> float:
    op = planck_problem()
    root_cfg = SolveConfig(precision_digits=digits)
    x_star = refine_root(op, root_cfg)
    arith = root_cfg.arithmetic
    floor = epsilon_floor(arith, arith.norm(x_star))
    cfg = SolveConfig(residual_tol=float(floor), precision_digits=digits)
    trace = solve(method, op, [x0], cfg)
    errors = [arith.norm(x - x_star) for x in trace.iterates()]
    return estimate_order(errors, floor=floor).coc


def test_newton_order_at_64_digits():
    assert 1.8 <= _coc("newton", 64) <= 2.2


def test_fifth_order_at_64_digits():
    assert 4.5 <= _coc("fifth", 64) <= 5.5


@pytest.mark.parametrize("digits", [64, 256])
def test_seventh_order(digits):
    assert 6.5 <= _coc("seventh", digits) <= 7.5


def test_seventh_order_in_double_precision_floors_out():
    with pytest.raises(InsufficientDataError):
        _coc("seventh", 16)


def test_refine_root():
    x = refine_root(planck_problem(), SolveConfig(precision_digits=80))
    assert abs(float(x[0]) - PLANCK_ROOT) < 1e-15
    assert abs(planck_problem().evaluate(x, SolveConfig(precision_digits=80).arithmetic)[0]) < 1e-77
    with pytest.raises(MissingRootError):
        refine_root(parse_system("x1 - 1"))


@pytest.mark.parametrize(
    "factory, table_id",
    [(logpoly_problem, 1), (planck_problem, 2)],
)
def test_bounds_hold_from_random_starts(factory, table_id, rng):
    op = factory()
    constants = TABLES[table_id].constants
    report = radius_report(constants)
    x_star = refine_root(op)
    for _ in range(100):
        x0 = PLANCK_ROOT if table_id == 2 else 1.0
        x0 += rng.uniform(-1.0, 1.0) * report.rho_min * 0.999
        trace = solve("seventh", op, [x0])
        assert trace.converged
        checks = verify_error_bounds(trace, constants, x_star, report)
        failed = [c for c in checks if not c.holds]
        assert not failed, failed[:3]


def test_fifth_order_bounds_use_first_three_majorants():
    constants = TABLES[2].constants
    report = radius_report(constants)
    op = planck_problem()
    trace = solve("fifth", op, [4.0])
    checks = verify_error_bounds(trace, constants, refine_root(op), report)
    assert {c.index for c in checks} == {0, 1, 2, 3}
    assert all(c.holds for c in checks)
    assert [label for label, _ in BOUND_LAYOUT[IterationMethod.FIFTH]] == ["y", "z1", "x_next"]


def test_newton_traces_get_monotone_checks_only():
    constants = TABLES[2].constants
    report = radius_report(constants)
    op = planck_problem()
    trace = solve("newton", op, [4.0])
    checks = verify_error_bounds(trace, constants, refine_root(op), report)
    assert checks and all(c.label == "monotone" for c in checks)
    assert len(checks) == trace.iterations


def test_start_outside_ball_is_rejected():
    constants = TABLES[1].constants
    report = radius_report(constants)
    op = logpoly_problem()
    trace = solve("seventh", op, [1.01])
    with pytest.raises(BallViolationError):
        verify_error_bounds(trace, constants, refine_root(op), report)
