"""Maximum likelihood estimation.

    l(delta, beta, gamma) = n ln delta - n ln beta + (delta - 1) sum ln z_i - sum z_i^delta,
    z_i = (gamma - x_i)/beta

The search runs on standardized data u_i = (X(n) - x_i)/spread in the
coordinates (ln delta, ln beta', t) with gamma' = e^t above the maximum, so
every iterate is feasible and gamma - x_i never suffers cancellation. For
delta < 1 the likelihood grows without bound as gamma falls onto X(n); the
search then stops at t = ln(boundary_epsilon) and the result carries
boundary_hit.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from ..config import MleConfig, get_mle_config
from ..distribution import RwParams, Sample
from ..errors import RwFitError
from .datatypes import EstimationResult, Method
from .mme import fit_mme

logger = logging.getLogger(__name__)

_LOG_DELTA_BOUNDS = (math.log(1e-3), math.log(1e3))
_LOG_SCALE_BOUNDS = (-30.0, 30.0)
_PENALTY = 1e300
_PERTURBATIONS = np.array(
    [[0.0, 0.0, 0.0], [1.0, -1.0, 1.0], [-1.0, 1.0, -1.0], [1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
)


def log_likelihood(p: RwParams, s: Sample) -> float:
    """Log-likelihood of the sample; -inf when any x_i >= gamma."""
    y = p.gamma - s.values
    if np.any(y <= 0):
        return -math.inf
    log_z = np.log(y) - math.log(p.beta)
    n = s.n
    return float(
        n * math.log(p.delta) - n * math.log(p.beta) + (p.delta - 1.0) * np.sum(log_z) - np.sum(np.exp(p.delta * log_z))
    )


def score(p: RwParams, s: Sample) -> Tuple[float, float, float]:
    """Partial derivatives of log_likelihood in (delta, beta, gamma).

    Requires every x_i < gamma.
    """
    y = p.gamma - s.values
    z = y / p.beta
    log_z = np.log(z)
    z_delta = np.exp(p.delta * log_z)
    n = s.n
    d_delta = n / p.delta + np.sum(log_z) - np.sum(z_delta * log_z)
    d_beta = -n * p.delta / p.beta + (p.delta / p.beta) * np.sum(z_delta)
    d_gamma = (p.delta - 1.0) * np.sum(1.0 / y) - (p.delta / p.beta) * np.sum(z_delta / z)
    return float(d_delta), float(d_beta), float(d_gamma)


class _StandardizedLikelihood:
    """Negative log-likelihood and gradient in (ln delta, ln beta', t)."""

    def __init__(self, s: Sample):
        self.n = s.n
        self.spread = s.spread
        u = (s.maximum - s.values) / self.spread
        with np.errstate(divide="ignore"):
            self.log_u = np.log(u)

    def __call__(self, theta: np.ndarray) -> Tuple[float, np.ndarray]:
        d, b, t = theta
        delta = math.exp(d)
        log_y = np.logaddexp(self.log_u, t)
        log_z = log_y - b
        with np.errstate(over="ignore"):
            z_delta = np.exp(delta * log_z)
        sum_z_delta = float(np.sum(z_delta))
        if not math.isfinite(sum_z_delta):
            return _PENALTY, np.zeros(3)

        n = self.n
        loglik = n * d - n * b + (delta - 1.0) * float(np.sum(log_z)) - sum_z_delta
        grad_d = n + delta * float(np.sum(log_z)) - delta * float(np.sum(z_delta * log_z))
        grad_b = -n * delta + delta * sum_z_delta
        # e^t / y_i <= 1, equal to 1 at the sample maximum
        ratio = np.exp(t - log_y)
        grad_t = float(np.sum(ratio * ((delta - 1.0) - delta * z_delta)))
        return -loglik, -np.array([grad_d, grad_b, grad_t])

    def to_params(self, theta: np.ndarray, maximum: float) -> RwParams:
        d, b, t = theta
        gamma = maximum + self.spread * math.exp(t)
        if gamma <= maximum:
            # offset below one ulp of the maximum
            gamma = float(np.nextafter(maximum, math.inf))
        return RwParams(math.exp(d), self.spread * math.exp(b), gamma)


def _starting_point(s: Sample) -> np.ndarray:
    spread = s.spread
    try:
        start = fit_mme(s).params
        if start.gamma > s.maximum:
            return np.array([
                math.log(start.delta),
                math.log(start.beta / spread),
                math.log((start.gamma - s.maximum) / spread),
            ])
        logger.debug("MME location is not above the sample maximum; using the default start")
    except RwFitError as e:
        logger.debug(f"MME start unavailable: {e}")
    sd = float(np.std(s.values))
    return np.array([0.0, math.log(sd / spread), math.log(0.1)])


def fit_mle(s: Sample, config: Optional[MleConfig] = None) -> EstimationResult:
    """Maximum likelihood fit with gamma constrained above the sample maximum.

    Args:
        s: Sample with n > 2 and two distinct values
        config: Boundary threshold, tolerances and multistart settings

    Returns:
        EstimationResult; boundary_hit when the likelihood is unbounded at
        gamma = X(n) and the search stopped at the threshold

    Raises:
        SampleError: If the sample is too small or degenerate
    """
    cfg = config or get_mle_config()
    s.require_estimable()
    logger.info(f"MLE fit on n={s.n}")

    objective = _StandardizedLikelihood(s)
    t_low = math.log(cfg.boundary_epsilon)
    bounds = [_LOG_DELTA_BOUNDS, _LOG_SCALE_BOUNDS, (t_low, _LOG_SCALE_BOUNDS[1])]
    lows = np.array([lo for lo, _ in bounds])
    highs = np.array([hi for _, hi in bounds])

    base = _starting_point(s)
    best = None
    iterations = 0
    for k in range(max(1, cfg.n_starts)):
        step = _PERTURBATIONS[k % len(_PERTURBATIONS)] * cfg.start_perturbation
        x0 = np.clip(base + step, lows, highs)
        res = minimize(
            objective,
            x0,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"maxiter": cfg.max_iterations, "gtol": cfg.gradient_tolerance, "ftol": 1e-15},
        )
        iterations += int(res.nit)
        logger.debug(f"MLE start {k}: -l={res.fun:.10g} after {res.nit} iterations ({res.message})")
        if best is None or res.fun < best.fun:
            best = res

    params = objective.to_params(best.x, s.maximum)
    loglik = -float(best.fun) - s.n * math.log(s.spread)
    boundary_hit = bool(best.x[2] <= t_low + 1e-8)
    notes = ""
    if boundary_hit:
        notes = (
            "likelihood unbounded as gamma approaches the sample maximum; "
            f"stopped at gamma = X(n) + {cfg.boundary_epsilon:g} * spread"
        )
        logger.warning(f"MLE: {notes}")

    return EstimationResult(
        method=Method.MLE,
        params=params,
        log_likelihood=loglik,
        converged=bool(best.success),
        boundary_hit=boundary_hit,
        iterations=iterations,
        notes=notes,
    )
