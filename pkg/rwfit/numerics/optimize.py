"""Bracketed 1-D optimization and root finding.

maximize_unimodal wraps scipy's bounded Brent method (golden-section steps
with parabolic acceleration, no evaluations outside the bracket) and checks
the bracket ends the way a plain golden-section search does, so a maximum
sitting on an end is reported with a flag instead of an interior point.
find_root_bracketed wraps scipy.optimize.brentq.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

from scipy.optimize import brentq, minimize_scalar

from ..config import get_optimizer_config
from ..errors import BracketError, ConvergenceError, DomainError

logger = logging.getLogger(__name__)

Objective = Callable[[float], float]


@dataclass(frozen=True)
class BracketSpec:
    """Search interval [lo, hi] with an absolute tolerance on the argument."""
    lo: float
    hi: float
    tolerance: float = 1e-5
    max_iterations: int = 500

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tolerance > 0:
            raise DomainError("bracket tolerance must be positive")

    @classmethod
    def around(cls, lo: float, hi: float, tolerance: Optional[float] = None) -> "BracketSpec":
        cfg = get_optimizer_config()
        return cls(lo, hi, tolerance if tolerance is not None else cfg.relative_tolerance, cfg.max_iterations)


@dataclass
class UnimodalMaximum:
    """Result of maximize_unimodal."""
    argmax: float
    max_value: float
    at_boundary: bool
    evaluations: int


def maximize_unimodal(f: Objective, bracket: BracketSpec) -> UnimodalMaximum:
    """Maximize a unimodal function on [bracket.lo, bracket.hi].

    Args:
        f: Objective, evaluated only inside the bracket
        bracket: Interval, argument tolerance and iteration cap

    Returns:
        UnimodalMaximum; at_boundary is True when the maximizer is within
        tolerance of an end of the bracket
    """
    evaluations = 0

    def negated(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        value = f(x)
        return math.inf if math.isnan(value) else -value

    res = minimize_scalar(
        negated,
        bounds=(bracket.lo, bracket.hi),
        method="bounded",
        options={"xatol": bracket.tolerance, "maxiter": bracket.max_iterations},
    )
    argmax, max_value = float(res.x), -float(res.fun)

    # Brent's bounded search never lands exactly on an end; compare against the ends directly
    f_lo, f_hi = -negated(bracket.lo), -negated(bracket.hi)
    at_boundary = False
    if f_lo >= max_value and f_lo >= f_hi:
        argmax, max_value, at_boundary = bracket.lo, f_lo, True
    elif f_hi >= max_value:
        argmax, max_value, at_boundary = bracket.hi, f_hi, True
    elif min(argmax - bracket.lo, bracket.hi - argmax) <= 3.0 * bracket.tolerance:
        at_boundary = True

    if not res.success:
        logger.debug(f"bounded search stopped after {res.nfev} evaluations: {res.message}")
    return UnimodalMaximum(argmax, max_value, at_boundary, evaluations)


def find_root_bracketed(f: Objective, bracket: BracketSpec) -> float:
    """Root of a continuous f with a sign change on [lo, hi].

    Raises:
        BracketError: If f(lo) and f(hi) have the same sign
        ConvergenceError: If brentq does not converge within max_iterations
    """
    f_lo, f_hi = f(bracket.lo), f(bracket.hi)
    if f_lo == 0.0:
        return bracket.lo
    if f_hi == 0.0:
        return bracket.hi
    if not (f_lo * f_hi < 0):
        raise BracketError(
            f"no sign change on [{bracket.lo}, {bracket.hi}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}"
        )
    root, info = brentq(
        f, bracket.lo, bracket.hi,
        xtol=bracket.tolerance,
        maxiter=bracket.max_iterations,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        raise ConvergenceError(f"root search did not converge: {info.flag}", best_estimate=float(root))
    return float(root)
