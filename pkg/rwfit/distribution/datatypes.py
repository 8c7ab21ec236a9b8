"""Core data types - parameter triple and ordered samples."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..errors import DomainError, SampleError


@dataclass(frozen=True)
class RwParams:
    """Reflected Weibull parameters.

    Attributes:
        delta: Shape, > 0
        beta: Scale, > 0, same units as the data
        gamma: Location (upper endpoint of the support), same units as the data
    """
    delta: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise DomainError(f"delta must be a positive finite number, got {self.delta}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be a positive finite number, got {self.beta}")
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.delta, self.beta, self.gamma)

    def affine(self, scale: float, shift: float) -> "RwParams":
        """Parameters of k*X + c for k > 0."""
        return RwParams(self.delta, scale * self.beta, scale * self.gamma + shift)


@dataclass(eq=False)
class Sample:
    """Observations sorted ascending.

    `bin_width` is set when the values are class midpoints of grouped data
    with a common class width; moment estimators use it for Sheppard's
    correction.
    """
    values: np.ndarray
    bin_width: Optional[float] = None
    source: str = ""

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=float).ravel())
        if values.size == 0:
            raise SampleError("sample is empty")
        if not np.all(np.isfinite(values)):
            raise SampleError("sample contains non-finite values")
        self.values = values

    @classmethod
    def of(cls, values: Iterable[float], **kwargs) -> "Sample":
        return cls(values=np.fromiter(values, dtype=float), **kwargs)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def minimum(self) -> float:
        return float(self.values[0])

    @property
    def maximum(self) -> float:
        return float(self.values[-1])

    @property
    def spread(self) -> float:
        return self.maximum - self.minimum

    def require_estimable(self) -> None:
        """Check n > 2 and at least two distinct values."""
        if self.n <= 2:
            raise SampleError(f"n > 2 required, got n = {self.n}")
        if not self.spread > 0:
            raise SampleError("degenerate sample: all values are equal")

    def affine(self, scale: float, shift: float) -> "Sample":
        """The sample k*x + c for k > 0."""
        if not scale > 0:
            raise DomainError("scale must be positive")
        width = None if self.bin_width is None else scale * self.bin_width
        return Sample(values=scale * self.values + shift, bin_width=width, source=self.source)

    def negated(self) -> "Sample":
        return Sample(values=-self.values, bin_width=self.bin_width, source=self.source)

    def __len__(self) -> int:
        return self.n
