"""Adaptive 1-D quadrature over finite, semi-infinite and infinite ranges.

Infinite ends are removed with the rational map

    z = b - scale * t / (1 - t),  t in [0, 1)      for (-inf, b]
    z = a + scale * t / (1 - t),  t in [0, 1)      for [a, +inf)

and the finite interval is handed to QUADPACK (scipy.integrate.quad,
21-point Gauss-Kronrod pairs, error from the embedded 10-point rule).
The map places half of the nodes within `scale` of the finite end, so
callers centre it where the integrand's mass is.
A doubly infinite range is split at `center`.

integrate_exp_peak handles integrands known only through their logarithm:
it finds the peak, cuts the range where the integrand has fallen by
quadrature.log_cutoff and integrates the shifted integrand on finite pieces.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_legendre

from ..config import get_quadrature_config
from ..errors import ConvergenceError, DomainError
from .optimize import BracketSpec, maximize_unimodal

logger = logging.getLogger(__name__)

Integrand = Callable[[float], float]

# QUADPACK warnings (ier 1 and 5) that mean the result cannot be trusted at all,
# keyed by the start of the message scipy returns for them
_FATAL_MESSAGES = {
    "The maximum number of subdivisions": "maximum number of subdivisions reached",
    "The integral is probably divergent": "integral is probably divergent",
}


def _fatal_reason(message: str) -> Optional[str]:
    for prefix, reason in _FATAL_MESSAGES.items():
        if message.lstrip().startswith(prefix):
            return reason
    return None


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for integrate_1d."""
    relative_tolerance: float = 1e-6
    absolute_tolerance: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.relative_tolerance > 0 and self.absolute_tolerance > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 10:
            raise DomainError("max_subdivisions must be at least 10")

    @classmethod
    def default(cls) -> "QuadratureSpec":
        cfg = get_quadrature_config()
        return cls(cfg.relative_tolerance, cfg.absolute_tolerance, cfg.max_subdivisions)

    def relaxed(self, relative_tolerance: float) -> "QuadratureSpec":
        return QuadratureSpec(relative_tolerance, self.absolute_tolerance, self.max_subdivisions)


def _quad_finite(f: Integrand, a: float, b: float, spec: QuadratureSpec) -> Tuple[float, float]:
    out = quad(
        f, a, b,
        epsabs=spec.absolute_tolerance,
        epsrel=spec.relative_tolerance,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, error = float(out[0]), float(out[1])
    message = str(out[3]) if len(out) >= 4 else ""
    reason = _fatal_reason(message) if message else None
    if reason or not math.isfinite(value):
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] failed: {reason or message or 'non-finite value'}",
            best_estimate=value,
            error_estimate=error,
        )
    if message:
        logger.debug(f"quadrature on [{a}, {b}] returned with warning: {message}")
    return value, error


def _lower_tail(f: Integrand, b: float, scale: float) -> Integrand:
    def mapped(t: float) -> float:
        s = 1.0 - t
        return f(b - scale * t / s) * scale / (s * s)
    return mapped


def _upper_tail(f: Integrand, a: float, scale: float) -> Integrand:
    def mapped(t: float) -> float:
        s = 1.0 - t
        return f(a + scale * t / s) * scale / (s * s)
    return mapped


def integrate_1d(
    f: Integrand,
    a: float,
    b: float,
    spec: Optional[QuadratureSpec] = None,
    center: float = 0.0,
    scale: float = 1.0,
) -> Tuple[float, float]:
    """Integrate f over (a, b); a may be -inf and b may be +inf.

    Args:
        f: Scalar integrand, finite on the open interval
        a: Lower limit or -inf
        b: Upper limit or +inf
        spec: Tolerances (defaults from settings.json)
        center: Split point when both limits are infinite
        scale: Length scale of the rational map

    Returns:
        (value, error_estimate)

    Raises:
        ConvergenceError: If QUADPACK runs out of subdivisions or detects divergence
    """
    spec = spec or QuadratureSpec.default()
    if not scale > 0:
        raise DomainError("scale must be positive")
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = integrate_1d(f, b, a, spec, center, scale)
        return -value, error

    lower_inf = math.isinf(a)
    upper_inf = math.isinf(b)
    if lower_inf and upper_inf:
        left, left_err = _quad_finite(_lower_tail(f, center, scale), 0.0, 1.0, spec)
        right, right_err = _quad_finite(_upper_tail(f, center, scale), 0.0, 1.0, spec)
        return left + right, left_err + right_err
    if lower_inf:
        return _quad_finite(_lower_tail(f, b, scale), 0.0, 1.0, spec)
    if upper_inf:
        return _quad_finite(_upper_tail(f, a, scale), 0.0, 1.0, spec)
    return _quad_finite(f, a, b, spec)


# =============================================================================
# PEAKED LOG-SPACE INTEGRANDS
# =============================================================================

LogIntegrand = Callable[[float], float]

_MAX_DOUBLINGS = 60
_MAX_HALVINGS = 12
_PEAK_TOLERANCE = 1e-3
_RULE_ORDERS = (32, 64)


@dataclass
class PeakIntegral:
    """Result of integrate_exp_peak.

    The integral of exp(log_f) is exp(log_value); moment is the integral of
    h * exp(log_f) divided by it (0 when no h was given).
    """
    log_value: float
    relative_error: float
    argmax: float
    lo: float
    hi: float
    moment: float = 0.0


@lru_cache(maxsize=None)
def _legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return roots_legendre(order)


def _finite_start(log_f: LogIntegrand, start: float, step: float) -> Optional[Tuple[float, float]]:
    value = log_f(start)
    if math.isfinite(value):
        return start, value
    for k in range(_MAX_DOUBLINGS):
        for x in (start + step * 2.0 ** k, start - step * 2.0 ** k):
            value = log_f(x)
            if math.isfinite(value):
                return x, value
    return None


def _climb(log_f: LogIntegrand, x: float, fx: float, step: float) -> Tuple[float, float]:
    """Walk uphill with doubling steps until the maximum is bracketed."""
    left, right = log_f(x - step), log_f(x + step)
    if left <= fx >= right:
        return x - step, x + step
    direction = 1.0 if right > left else -1.0
    prev, cur, f_cur = x, x + direction * step, max(left, right)
    for _ in range(_MAX_DOUBLINGS):
        step *= 2.0
        nxt = cur + direction * step
        f_next = log_f(nxt)
        if f_next < f_cur:
            return (prev, nxt) if direction > 0 else (nxt, prev)
        prev, cur, f_cur = cur, nxt, f_next
    raise ConvergenceError(f"log-integrand keeps increasing beyond {cur}", best_estimate=f_cur)


def _edge(log_f: LogIntegrand, peak_at: float, floor: float, step: float, direction: float) -> float:
    """First point on one side of the peak where log_f drops below floor."""
    for _ in range(_MAX_HALVINGS):
        if log_f(peak_at + direction * step) >= floor:
            break
        step /= 2.0
    for _ in range(_MAX_DOUBLINGS):
        x = peak_at + direction * step
        if not log_f(x) >= floor:
            return x
        step *= 2.0
    raise ConvergenceError(f"log-integrand does not decay away from {peak_at}")


class _Side:
    """exp(log_f - peak), and optionally h times it, on one side of the peak."""

    def __init__(self, log_f, h, peak: float, cutoff: float, vectorized: bool):
        self.log_f = log_f
        self.h = h
        self.peak = peak
        self.cutoff = cutoff
        self.vectorized = vectorized

    def _weights(self, log_values):
        excess = np.asarray(log_values, dtype=float) - self.peak
        if np.any(excess > self.cutoff):
            raise ConvergenceError(f"log-integrand lies {float(np.max(excess)):.3g} above the located maximum")
        return np.exp(excess)

    def fixed(self, lo: float, hi: float, spec: QuadratureSpec) -> Optional[Tuple[float, float, float]]:
        """Gauss-Legendre pair on [lo, hi]; None when the two orders disagree."""
        estimates = []
        for order in _RULE_ORDERS:
            t, wt = _legendre(order)
            half = 0.5 * (hi - lo)
            x = lo + half * (t + 1.0)
            weight = self._weights(self.log_f(x))
            value = half * float(np.dot(wt, weight))
            moment = half * float(np.dot(wt, weight * self.h(x))) if self.h is not None else 0.0
            estimates.append((value, moment))
        (low, low_m), (high, high_m) = estimates
        error = abs(high - low)
        allowed = max(spec.absolute_tolerance, spec.relative_tolerance * abs(high))
        if error > allowed or abs(high_m - low_m) > max(allowed, spec.relative_tolerance * abs(high_m)):
            return None
        return high, error, high_m

    def adaptive(self, lo: float, hi: float, spec: QuadratureSpec) -> Tuple[float, float, float]:
        """QUADPACK on [lo, hi], with the moment to an absolute tolerance set by the weight."""
        def scalar(f):
            return (lambda x: float(f(np.array([x]))[0])) if self.vectorized else f

        log_f = scalar(self.log_f)
        value, error = _quad_finite(lambda x: float(self._weights(log_f(x))), lo, hi, spec)
        if self.h is None:
            return value, error, 0.0
        h = scalar(self.h)
        moment_spec = QuadratureSpec(
            spec.relative_tolerance,
            max(spec.absolute_tolerance, spec.relative_tolerance * value),
            spec.max_subdivisions,
        )

        def weighted(x: float) -> float:
            lv = log_f(x)
            return h(x) * float(self._weights(lv)) if lv > -math.inf else 0.0

        return value, error, _quad_finite(weighted, lo, hi, moment_spec)[0]

    def integrate(self, lo: float, hi: float, spec: QuadratureSpec) -> Tuple[float, float, float]:
        if self.vectorized:
            found = self.fixed(lo, hi, spec)
            if found is not None:
                return found
            logger.debug(f"Gauss-Legendre pair disagrees on [{lo}, {hi}]; using QUADPACK")
        return self.adaptive(lo, hi, spec)


def integrate_exp_peak(
    log_f: Callable,
    start: float,
    step: float = 0.5,
    spec: Optional[QuadratureSpec] = None,
    cutoff: Optional[float] = None,
    h: Optional[Callable] = None,
    vectorized: bool = False,
) -> PeakIntegral:
    """Integrate exp(log_f) over the real line for a unimodal log_f.

    The maximum is located by climbing from start and refining with a
    bounded search. The range is then cut where log_f falls cutoff below the
    maximum, and each side of the peak is integrated on its own finite
    interval with the integrand shifted by the maximum, so nothing is
    exponentiated above zero. Vectorized integrands are tried with a
    32/64-point Gauss-Legendre pair first and fall back to QUADPACK when the
    two disagree; h is integrated on the same nodes as the weight.

    Args:
        log_f: Log of the integrand; -inf where it vanishes, never NaN
        start: Starting guess for the maximum
        step: Initial step for climbing and for locating the cut points
        spec: Tolerances (defaults from settings.json)
        cutoff: Dropped log-range below the peak (quadrature.log_cutoff)
        h: Optional weight whose exp(log_f)-weighted mean is returned as moment
        vectorized: log_f and h take and return arrays

    Returns:
        PeakIntegral; log_value is -inf when log_f is -inf at every point tried

    Raises:
        ConvergenceError: If no maximum is bracketed, the integrand does not
            decay, or QUADPACK fails on either side
    """
    spec = spec or QuadratureSpec.default()
    cutoff = cutoff if cutoff is not None else get_quadrature_config().log_cutoff
    point = (lambda x: float(log_f(np.array([x]))[0])) if vectorized else log_f

    found = _finite_start(point, start, step)
    if found is None:
        return PeakIntegral(-math.inf, 0.0, start, start, start)
    a, c = _climb(point, found[0], found[1], step)
    best = maximize_unimodal(point, BracketSpec(a, c, _PEAK_TOLERANCE * max(1.0, abs(a), abs(c))))
    argmax, peak = best.argmax, best.max_value
    floor = peak - cutoff
    lo = _edge(point, argmax, floor, step, -1.0)
    hi = _edge(point, argmax, floor, step, 1.0)

    side = _Side(log_f, h, peak, cutoff, vectorized)
    left, left_err, left_m = side.integrate(lo, argmax, spec)
    right, right_err, right_m = side.integrate(argmax, hi, spec)
    total = left + right
    if not total > 0:
        raise ConvergenceError(f"integral vanished on [{lo}, {hi}]", best_estimate=total)
    return PeakIntegral(
        log_value=peak + math.log(total),
        relative_error=(left_err + right_err) / total,
        argmax=argmax,
        lo=lo,
        hi=hi,
        moment=(left_m + right_m) / total,
    )
