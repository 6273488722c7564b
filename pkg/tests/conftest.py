import numpy as np
import pytest

from src.majorant.constants import ContinuityConstants
from src.problems.corpus import affine_problem
from src.problems.operator import OperatorSpec
from src.problems.tables import TABLES


class CountingOperator:
    """Wraps an operator and counts residual and Jacobian evaluations."""

    def __init__(self, op: OperatorSpec):
        self.evaluations = 0
        self.jacobians = 0

        def residual(x, arith):
            self.evaluations += 1
            return op.residual_fn(x, arith)

        def jacobian(x, arith):
            self.jacobians += 1
            return op.jacobian_fn(x, arith)

        self.op = OperatorSpec(
            name=op.name,
            dimension=op.dimension,
            residual_fn=residual,
            jacobian_fn=jacobian,
            known_root=op.known_root,
            domain=op.domain,
        )

    def reset(self):
        self.evaluations = 0
        self.jacobians = 0


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def counting():
    return CountingOperator


def random_affine(rng, n: int):
    """Diagonally dominant A so every draw is comfortably nonsingular."""
    a = rng.uniform(-1.0, 1.0, (n, n)) + (n + 1.0) * np.eye(n)
    b = rng.uniform(-1.0, 1.0, n)
    return affine_problem(a, b, name=f"affine{n}")


@pytest.fixture
def affine_factory():
    return random_affine


def random_constants(rng, kind: str) -> ContinuityConstants:
    c0 = float(rng.uniform(0.05, 5.0))
    c = c0 * float(rng.uniform(1.0, 3.0))
    if kind == "lipschitz":
        return ContinuityConstants.lipschitz(c0, c)
    return ContinuityConstants.hoelder(c0, c, float(rng.uniform(0.5, 1.0)))


@pytest.fixture
def constants_factory():
    return random_constants


@pytest.fixture(params=sorted(TABLES))
def table(request):
    return TABLES[request.param]
