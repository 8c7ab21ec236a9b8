"""Estimation results and intermediate statistics."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ..distribution.datatypes import RwParams
from ..errors import DomainError


class Method(str, Enum):
    MLE = "MLE"
    MME = "MME"
    LSPFE = "LSPFE"

    @classmethod
    def parse(cls, name: "str | Method") -> "Method":
        if isinstance(name, Method):
            return name
        try:
            return cls(name.upper())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown method '{name}'. Available: {valid}") from None


@dataclass
class SampleMoments:
    """Raw moments (means of powers) and population central moments."""
    m1: float
    m2: float
    m3: float
    central2: float
    central3: float
    n: int = 0

    @property
    def skewness(self) -> float:
        return self.central3 / self.central2 ** 1.5


@dataclass
class WStats:
    """Normalized order statistics W_(i) = (X_(i) - X_(1)) / (X_(n) - X_(1)).

    w[0] == 0 and w[-1] == 1 exactly; only w[1:-1] carry information.
    """
    w: np.ndarray
    spread: float

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=float)
        if self.w.size < 3:
            raise DomainError("W statistics need n > 2")
        if self.w[0] != 0.0 or self.w[-1] != 1.0 or np.any(np.diff(self.w) < 0):
            raise DomainError("W statistics must be nondecreasing from 0 to 1")

    @property
    def n(self) -> int:
        return int(self.w.size)

    @property
    def interior(self) -> np.ndarray:
        return self.w[1:-1]


@dataclass
class LocationScale:
    """Location and scale recovered once the shape is known."""
    gamma_init: float
    beta_init: float
    gamma_corrected: float
    beta_corrected: float


@dataclass
class LspfeDiagnostics:
    """Intermediate values of the location/scale-free fit."""
    delta_hat: float
    gamma_init: float
    beta_init: float
    gamma_corrected: float
    beta_corrected: float
    loglik_at_max: float = float("nan")
    quadrature_error: float = float("nan")
    bracket_boundary: bool = False


@dataclass
class EstimationResult:
    """Fitted parameters with the diagnostics of the method that produced them."""
    method: Method
    params: RwParams
    log_likelihood: Optional[float] = None
    converged: bool = True
    boundary_hit: bool = False
    iterations: int = 0
    notes: str = ""
    diagnostics: Optional[LspfeDiagnostics] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.boundary_hit and not self.notes:
            raise DomainError("a boundary hit must be explained in notes")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "method": self.method.value,
            "delta": self.params.delta,
            "beta": self.params.beta,
            "gamma": self.params.gamma,
            "log_likelihood": self.log_likelihood,
            "converged": self.converged,
            "boundary_hit": self.boundary_hit,
            "iterations": self.iterations,
            "notes": self.notes,
            "diagnostics": asdict(self.diagnostics) if self.diagnostics else None,
            "extras": dict(self.extras),
        }
