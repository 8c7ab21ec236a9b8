"""Location and scale free estimation.

The statistics W(i) = (X(i) - X(1)) / (X(n) - X(1)) do not depend on beta or
gamma. Their joint density psi(w; delta) is the order-statistic density of a
standard reflected Weibull sample integrated over the two extremes u < v < 0:

    psi = n! int int g(v) g(u) (v - u)^(n-2) prod_i g(u + (v - u) w_i) du dv,
    g(z) = delta (-z)^(delta-1) exp(-(-z)^delta)

Integration coordinates: p = (-v)^delta, q = (-u)^delta turn g(v) dv into
e^-p dp, and p = e^s, q = p + e^r map the region onto the plane. In (s, r)
the widths of the integrand hardly change with delta, so the same step
sizes work from delta = 1e-3 to 1e3. With a = q^(1/delta),
b = p^(1/delta) and y_i = a (1 - w_i) + b w_i the log-integrand is

    L = ln n! + s + r - p - q + (n-2) ln(a - b) + sum_i ln g(-y_i)

Every term is computed in log space. Each level finds its own peak, drops
what lies more than quadrature.log_cutoff below it and integrates the
shifted integrand on finite intervals either side of the peak. Pipeline:

1. compute_w - W statistics (ties jittered)
2. estimate_shape - maximize ln psi over log delta
3. estimate_location_scale - gamma, beta with the order-statistic correction
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import gammaln

from ..config import LspfeConfig, get_lspfe_config, get_optimizer_config, get_quadrature_config
from ..distribution import RwParams, Sample
from ..errors import ConvergenceError, DomainError
from ..numerics import BracketSpec, PeakIntegral, QuadratureSpec, integrate_exp_peak, log_power_mean, maximize_unimodal
from .datatypes import EstimationResult, LocationScale, LspfeDiagnostics, Method, WStats
from .mle import log_likelihood

logger = logging.getLogger(__name__)

_STEP = 0.5
# quadrature error estimates above this multiple of the requested tolerances mark a fit unconverged
_ERROR_SLACK = 10.0


# =============================================================================
# W STATISTICS
# =============================================================================

def _break_ties(values: np.ndarray, step: float) -> Tuple[np.ndarray, int]:
    """Spread runs of equal values by multiples of step, keeping the order."""
    tied = np.diff(values) == 0
    if not np.any(tied):
        return values, 0
    out = values.copy()
    run = 0
    for i in range(1, values.size):
        run = run + 1 if tied[i - 1] else 0
        out[i] = values[i] + run * step
    return out, int(np.count_nonzero(tied))


def compute_w(s: Sample, config: Optional[LspfeConfig] = None) -> WStats:
    """W statistics of a sample.

    Tied values are perturbed by multiples of tie_jitter * spread and a
    warning is logged.

    Raises:
        SampleError: If n <= 2 or all values are equal
    """
    cfg = config or get_lspfe_config()
    s.require_estimable()
    values, ties = _break_ties(s.values, cfg.tie_jitter * s.spread)
    if ties:
        logger.warning(f"{ties} tied values perturbed by multiples of {cfg.tie_jitter:g} * spread")
    spread = float(values[-1] - values[0])
    w = (values - values[0]) / spread
    w[0], w[-1] = 0.0, 1.0
    return WStats(w=w, spread=spread)


# =============================================================================
# W-LIKELIHOOD
# =============================================================================

class _Integrand:
    """Log-integrand of psi in (s, r) for one shape value, vectorized over r."""

    def __init__(self, w: WStats, delta: float):
        self.n = w.n
        self.m = w.n - 2
        self.delta = delta
        self.log_delta = math.log(delta)
        self.log_factorial = float(gammaln(w.n + 1))
        # mass sits near p ~ 1/n and q - p ~ ln n
        self.start = (-math.log(w.n), math.log(math.log(w.n)))
        interior = w.interior
        with np.errstate(divide="ignore"):
            self.log_w = np.log(interior)
            self.log_1mw = np.log1p(-interior)

    def _parts(self, s: float, r: np.ndarray):
        delta = self.delta
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            softplus = np.logaddexp(0.0, r - s)
            la = (s + softplus) / delta
            lb = s / delta
            diff = -softplus / delta  # ln(b/a) < 0
            log_gap = np.where(diff < 0, la + np.log(-np.expm1(diff)), -np.inf)
            log_y = np.logaddexp(la[..., None] + self.log_1mw, lb + self.log_w)
            y_delta = np.exp(delta * log_y)
            p = math.exp(s) if s < 700.0 else math.inf
            q = p + np.exp(r)
            value = (
                self.log_factorial + s + r - p - q + self.m * (log_gap + self.log_delta)
                + (delta - 1.0) * log_y.sum(axis=-1) - y_delta.sum(axis=-1)
            )
        value = np.where(np.isnan(value), -np.inf, value)
        return la, lb, diff, log_y, y_delta, value

    def log_value(self, s: float, r: np.ndarray) -> np.ndarray:
        return self._parts(s, r)[-1]

    def derivative(self, s: float, r: np.ndarray) -> np.ndarray:
        """dL/d(delta); the (p, q) measure does not depend on delta. Zero where L = -inf."""
        la, lb, diff, log_y, y_delta, value = self._parts(s, r)
        delta = self.delta
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            d_la = -la / delta
            # d/d(delta) of ln(1 - e^diff) with d(diff)/d(delta) = -diff/delta
            d_log_gap = d_la + np.exp(diff) * diff / (delta * -np.expm1(diff))
            weight_b = np.exp(lb + self.log_w - log_y)
            d_log_y = d_la[..., None] - weight_b * (diff / delta)[..., None]
            derivative = (
                self.m * (d_log_gap + 1.0 / delta)
                + log_y.sum(axis=-1)
                + (delta - 1.0) * d_log_y.sum(axis=-1)
                - (y_delta * (log_y + delta * d_log_y)).sum(axis=-1)
            )
        return np.where(np.isfinite(value) & np.isfinite(derivative), derivative, 0.0)


class _NestedIntegral:
    """Outer integral over s of inner integrals over r.

    Both levels go through integrate_exp_peak: the peak is located, the range
    is cut log_cutoff below it and each side is integrated on a finite
    interval. The outer integrand is the log of the inner integral, so the
    shift by the maximum happens once per level.
    """

    def __init__(self, integrand: _Integrand, inner: QuadratureSpec, outer: QuadratureSpec, cutoff: float):
        self.f = integrand
        self.inner = inner
        self.outer = outer
        self.cutoff = cutoff
        self.inner_relative_error = 0.0
        self._r_start = integrand.start[1]
        self._cache: Dict[Tuple[float, bool], PeakIntegral] = {}

    def _inner(self, s: float, derivative: bool) -> PeakIntegral:
        key = (s, derivative)
        if key in self._cache:
            return self._cache[key]
        h = (lambda r: self.f.derivative(s, r)) if derivative else None
        try:
            result = integrate_exp_peak(
                lambda r: self.f.log_value(s, r), self._r_start, _STEP, self.inner, self.cutoff, h, vectorized=True,
            )
        except ConvergenceError as e:
            raise ConvergenceError(f"inner quadrature at s={s:.6g} failed: {e}") from e
        if math.isfinite(result.log_value):
            # neighbouring outer nodes peak at nearby r
            self._r_start = result.argmax
            self.inner_relative_error = max(self.inner_relative_error, result.relative_error)
        self._cache[key] = result
        return result

    def integrate(self, derivative: bool) -> PeakIntegral:
        h = (lambda s: self._inner(s, True).moment) if derivative else None
        try:
            result = integrate_exp_peak(
                lambda s: self._inner(s, derivative).log_value,
                self.f.start[0], _STEP, self.outer, self.cutoff, h,
            )
        except ConvergenceError as e:
            raise ConvergenceError(f"W-likelihood quadrature failed at delta={self.f.delta:g}: {e}") from e
        except ArithmeticError as e:
            raise ConvergenceError(f"W-likelihood quadrature failed at delta={self.f.delta:g}: {e!r}") from e
        if not math.isfinite(result.log_value):
            raise ConvergenceError(f"W-likelihood integral vanished at delta={self.f.delta:g}")
        return result

    def log_value(self) -> Tuple[float, float]:
        result = self.integrate(derivative=False)
        return result.log_value, result.relative_error + self.inner_relative_error

    def log_value_and_derivative(self) -> Tuple[float, float, float]:
        result = self.integrate(derivative=True)
        return result.log_value, result.moment, result.relative_error + self.inner_relative_error


def _check_delta(delta: float, cfg: LspfeConfig) -> None:
    if not cfg.delta_min <= delta <= cfg.delta_max:
        raise DomainError(f"delta must lie in [{cfg.delta_min:g}, {cfg.delta_max:g}], got {delta}")


def _levels(spec: Optional[QuadratureSpec]) -> Tuple[QuadratureSpec, QuadratureSpec]:
    """Inner and outer tolerances; the outer level is never tighter than outer_relative_tolerance."""
    inner = spec or QuadratureSpec.default()
    return inner, inner.relaxed(max(inner.relative_tolerance, get_quadrature_config().outer_relative_tolerance))


def _nested(delta: float, w: WStats, spec: Optional[QuadratureSpec], config: Optional[LspfeConfig]) -> _NestedIntegral:
    cfg = config or get_lspfe_config()
    _check_delta(delta, cfg)
    inner, outer = _levels(spec)
    return _NestedIntegral(_Integrand(w, delta), inner, outer, get_quadrature_config().log_cutoff)


def w_log_likelihood(
    delta: float,
    w: WStats,
    spec: Optional[QuadratureSpec] = None,
    config: Optional[LspfeConfig] = None,
) -> Tuple[float, float]:
    """ln psi(w_2, ..., w_{n-1}; delta) by nested adaptive quadrature.

    Args:
        delta: Shape, within [delta_min, delta_max] of the LSPFE config
        w: W statistics
        spec: Inner quadrature tolerances; the outer level uses the larger of
            these and quadrature.outer_relative_tolerance

    Returns:
        (log-likelihood, relative error estimate of psi summed over both levels)

    Raises:
        DomainError: If delta is outside the search range
        ConvergenceError: If a quadrature fails or the integrand overflows
    """
    return _nested(delta, w, spec, config).log_value()


def w_log_likelihood_derivative(
    delta: float,
    w: WStats,
    spec: Optional[QuadratureSpec] = None,
    config: Optional[LspfeConfig] = None,
) -> float:
    """d ln psi / d delta, as the integral of L' e^L over the integral of e^L."""
    return _nested(delta, w, spec, config).log_value_and_derivative()[1]


def w_log_likelihood_exponential(w: WStats) -> float:
    """Closed form of ln psi at delta = 1.

    psi(w; 1) = (n-1)! (n-2)! / (1 + sum_i (1 - w_i))^(n-1)
    """
    n = w.n
    return float(gammaln(n) + gammaln(n - 1) - (n - 1) * math.log1p(float(np.sum(1.0 - w.interior))))


# =============================================================================
# ESTIMATION
# =============================================================================

@dataclass
class _ShapeSearch:
    delta_hat: float
    boundary: bool
    loglik: float
    error: float
    evaluations: int


def _search_shape(w: WStats, spec: Optional[QuadratureSpec], cfg: LspfeConfig) -> _ShapeSearch:
    errors: Dict[float, float] = {}
    failures: Dict[float, str] = {}

    def objective(log_delta: float) -> float:
        try:
            value, err = w_log_likelihood(math.exp(log_delta), w, spec, cfg)
        except ConvergenceError as e:
            logger.warning(f"W-likelihood not evaluated at delta={math.exp(log_delta):.6g}: {e}")
            failures[log_delta] = str(e)
            errors[log_delta] = math.inf
            return -math.inf
        errors[log_delta] = err
        return value

    opt = get_optimizer_config()
    bracket = BracketSpec(math.log(cfg.delta_min), math.log(cfg.delta_max), opt.relative_tolerance, opt.max_iterations)
    best = maximize_unimodal(objective, bracket)
    if not math.isfinite(best.max_value):
        first = next(iter(failures.values()), "no finite value")
        raise ConvergenceError(f"W-likelihood could not be evaluated near the maximum: {first}")
    if failures:
        logger.warning(f"{len(failures)} of {best.evaluations} W-likelihood evaluations failed during the shape search")
    if best.at_boundary:
        logger.warning(f"shape search ended at the bracket boundary (delta={math.exp(best.argmax):.6g})")
    return _ShapeSearch(
        delta_hat=math.exp(best.argmax),
        boundary=best.at_boundary,
        loglik=best.max_value,
        error=errors.get(best.argmax, float("nan")),
        evaluations=best.evaluations,
    )


def estimate_shape(
    w: WStats,
    spec: Optional[QuadratureSpec] = None,
    config: Optional[LspfeConfig] = None,
) -> Tuple[float, bool]:
    """Maximize the W-likelihood over log delta.

    Returns:
        (delta_hat, boundary) where boundary flags an argmax at an end of
        [delta_min, delta_max]
    """
    found = _search_shape(w, spec, config or get_lspfe_config())
    return found.delta_hat, found.boundary


def estimate_location_scale(s: Sample, delta_hat: float) -> LocationScale:
    """Location and scale given the shape.

    gamma_init = X(n); beta_init is the delta-power mean of X(n) - x_i. The
    location is then moved up by the expected gap between gamma and the
    sample maximum, beta_init * Gamma(1 + 1/delta) * n^(-1/delta), and the
    scale recomputed about the corrected location.
    """
    if not delta_hat > 0:
        raise DomainError(f"delta_hat must be positive, got {delta_hat}")
    n = s.n
    gamma_init = s.maximum
    beta_init = math.exp(log_power_mean(gamma_init - s.values, delta_hat))
    correction = float(np.exp(math.log(beta_init) + gammaln(1.0 + 1.0 / delta_hat) - math.log(n) / delta_hat))
    gamma_corrected = gamma_init + correction
    if gamma_corrected <= gamma_init:
        gamma_corrected = float(np.nextafter(gamma_init, math.inf))
    beta_corrected = math.exp(log_power_mean(gamma_corrected - s.values, delta_hat))
    return LocationScale(gamma_init, beta_init, gamma_corrected, beta_corrected)


def fit_lspfe(
    s: Sample,
    spec: Optional[QuadratureSpec] = None,
    config: Optional[LspfeConfig] = None,
) -> EstimationResult:
    """Location and scale free fit: W statistics, shape search, corrected location/scale.

    Args:
        s: Sample with n > 2 and two distinct values
        spec: Quadrature tolerances for the W-likelihood
        config: Shape search range and tie jitter

    Returns:
        EstimationResult with LspfeDiagnostics attached

    Raises:
        SampleError: If the sample is too small or degenerate
        ConvergenceError: If the W-likelihood quadrature fails
    """
    cfg = config or get_lspfe_config()
    s.require_estimable()
    logger.info(f"LSPFE fit on n={s.n}")
    inner, outer = _levels(spec)
    tolerance = _ERROR_SLACK * (inner.relative_tolerance + outer.relative_tolerance)

    w = compute_w(s, cfg)
    found = _search_shape(w, spec, cfg)
    ls = estimate_location_scale(s, found.delta_hat)

    params = RwParams(found.delta_hat, ls.beta_corrected, ls.gamma_corrected)
    notes = ["location correction uses Gamma(1 + 1/delta) * n**(-1/delta)"]
    converged = math.isfinite(found.error) and found.error <= tolerance
    if not converged:
        notes.append(f"quadrature error {found.error:.3g} exceeds {tolerance:.3g}")
        logger.warning(f"LSPFE quadrature error {found.error:.3g} at delta={found.delta_hat:.6g} exceeds {tolerance:.3g}")
    if found.boundary:
        notes.append(f"shape estimate at the end of the search range [{cfg.delta_min:g}, {cfg.delta_max:g}]")

    diagnostics = LspfeDiagnostics(
        delta_hat=found.delta_hat,
        gamma_init=ls.gamma_init,
        beta_init=ls.beta_init,
        gamma_corrected=ls.gamma_corrected,
        beta_corrected=ls.beta_corrected,
        loglik_at_max=found.loglik,
        quadrature_error=found.error,
        bracket_boundary=found.boundary,
    )
    logger.info(f"LSPFE: delta={params.delta:.6g}, beta={params.beta:.6g}, gamma={params.gamma:.6g}")
    return EstimationResult(
        method=Method.LSPFE,
        params=params,
        log_likelihood=log_likelihood(params, s),
        converged=converged,
        boundary_hit=found.boundary,
        iterations=found.evaluations,
        notes="; ".join(notes),
        diagnostics=diagnostics,
    )
