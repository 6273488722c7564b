"""
constants.py — Continuity constants, root-search settings and radius reports.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Tuple

from ..convball_utils.settings import env_float, env_int


class ContinuityClass(str, Enum):
    LIPSCHITZ = "lipschitz"
    HOELDER = "hoelder"


MAJORANT_INDICES = (1, 2, 3, 4)


def check_index(i: int) -> int:
    if i not in MAJORANT_INDICES:
        raise ValueError(f"majorant index must be one of 1..4, got {i!r}")
    return i


@dataclass(frozen=True)
class ContinuityConstants:
    """
    Center constant c0 (psi0 / kappa0), full constant c (psi / kappa) and the
    Hoelder exponent q. Lipschitz constants always carry q = 1.
    """

    kind: ContinuityClass
    c0: float
    c: float
    q: float = 1.0

    def __post_init__(self):
        kind = ContinuityClass(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "q", float(self.q))
        if kind is ContinuityClass.LIPSCHITZ and self.q != 1.0:
            raise ValueError("Lipschitz constants have q = 1")
        if not (self.c0 > 0 and self.c > 0):
            raise ValueError(f"constants must be positive, got c0={self.c0}, c={self.c}")
        if self.c0 > self.c:
            raise ValueError(f"center constant {self.c0} exceeds full constant {self.c}")
        if not (0.0 < self.q <= 1.0):
            raise ValueError(f"Hoelder exponent must lie in (0, 1], got {self.q}")

    @classmethod
    def lipschitz(cls, psi0: float, psi: float) -> "ContinuityConstants":
        return cls(ContinuityClass.LIPSCHITZ, psi0, psi, 1.0)

    @classmethod
    def hoelder(cls, kappa0: float, kappa: float, q: float) -> "ContinuityConstants":
        return cls(ContinuityClass.HOELDER, kappa0, kappa, q)

    @property
    def is_lipschitz(self) -> bool:
        return self.kind is ContinuityClass.LIPSCHITZ

    def scaled(self, factor: float) -> "ContinuityConstants":
        return ContinuityConstants(self.kind, self.c0 * factor, self.c * factor, self.q)

    def as_dict(self) -> Dict[str, Any]:
        return {"class": self.kind.value, "c0": self.c0, "c": self.c, "q": self.q}


@dataclass(frozen=True)
class RootSearchConfig:
    grid_points: int = 10_000
    abs_tol: float = 1e-12
    domain_margin: float = 1e-9

    def __post_init__(self):
        if self.grid_points < 100:
            raise ValueError("grid_points must be at least 100")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not (0 < self.domain_margin < 1):
            raise ValueError("domain_margin must lie in (0, 1)")

    @classmethod
    def from_env(cls, **overrides) -> "RootSearchConfig":
        values = {
            "grid_points": env_int("CONVBALL_GRID_POINTS", 10_000),
            "abs_tol": env_float("CONVBALL_ABS_TOL", 1e-12),
            "domain_margin": env_float("CONVBALL_DOMAIN_MARGIN", 1e-9),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class RadiusReport:
    """rho holds rho_1..rho_4 in index order."""

    rho: Tuple[float, float, float, float]
    rho_min: float
    uniqueness_sup: float
    uniqueness_closed: bool
    uniqueness_proof_bound: float
    domain_limit: float
    constants: ContinuityConstants = field(repr=False)

    def radius(self, i: int) -> float:
        return self.rho[check_index(i) - 1]

    def radii_dict(self) -> Dict[str, float]:
        out = {f"rho_{i}": self.rho[i - 1] for i in MAJORANT_INDICES}
        out["rho"] = self.rho_min
        out["domain_limit"] = self.domain_limit
        return out

    def as_dict(self) -> Dict[str, Any]:
        return {
            "constants": self.constants.as_dict(),
            "radii": self.radii_dict(),
            "uniqueness": {
                "sup": self.uniqueness_sup,
                "closed": self.uniqueness_closed,
                "proof_bound": self.uniqueness_proof_bound,
            },
        }
