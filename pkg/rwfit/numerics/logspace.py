"""Log-space sums and power means."""
from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from ..errors import DomainError


def log_sum_exp(terms: Sequence[float]) -> float:
    """ln(sum(exp(t))) without overflow."""
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        raise DomainError("log_sum_exp needs at least one term")
    return float(logsumexp(terms))


def log_power_mean(values: Sequence[float], power: float) -> float:
    """ln([mean(values**power)]**(1/power)) for nonnegative values, power > 0.

    Zero values contribute nothing (0**power = 0).
    """
    if not power > 0:
        raise DomainError("power must be positive")
    values = np.asarray(values, dtype=float)
    if values.size == 0 or np.any(values < 0):
        raise DomainError("power mean needs a nonempty array of nonnegative values")
    with np.errstate(divide="ignore"):
        logs = power * np.log(values)
    return float((logsumexp(logs) - np.log(values.size)) / power)
