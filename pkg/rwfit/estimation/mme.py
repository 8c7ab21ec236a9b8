"""Method-of-moments estimation.

Matching E[X], E[X^2], E[X^3] to the sample reduces to one equation in the
shape: the skewness of Y = gamma - X is a function of delta alone,

    g(delta) = [G3 - 3 G1 G2 + 2 G1^3] / [G2 - G1^2]^(3/2),   Gk = Gamma(1 + k/delta)

and -skew(sample) = g(delta). Scale and location then follow in closed form.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import gammaln

from ..config import MmeConfig, get_mme_config, get_optimizer_config
from ..distribution import RwParams, Sample, raw_moments
from ..errors import DomainError, NoSolutionError, SampleError
from ..numerics import BracketSpec, find_root_bracketed
from .datatypes import EstimationResult, Method, SampleMoments

logger = logging.getLogger(__name__)


def sample_moments(s: Sample, sheppard: Optional[bool] = None) -> SampleMoments:
    """Raw and population central moments of a sample.

    Central moments are accumulated from deviations about the mean. When the
    sample carries a class width h (grouped data expanded to midpoints) and
    Sheppard's correction is enabled, h^2/12 is subtracted from the variance
    and the raw moments are rebuilt from the corrected central ones.

    Args:
        s: Sample
        sheppard: Apply Sheppard's correction (default from settings.json)

    Returns:
        SampleMoments

    Raises:
        SampleError: If the corrected variance is not positive
    """
    if sheppard is None:
        sheppard = get_mme_config().sheppard_correction
    x = s.values
    m1 = float(np.mean(x))
    dev = x - m1
    central2 = float(np.mean(dev ** 2))
    central3 = float(np.mean(dev ** 3))
    m2 = float(np.mean(x ** 2))
    m3 = float(np.mean(x ** 3))

    if sheppard and s.bin_width:
        central2 -= s.bin_width ** 2 / 12.0
        if not central2 > 0:
            raise SampleError(
                f"variance after Sheppard's correction is not positive (class width {s.bin_width})"
            )
        m2 = central2 + m1 ** 2
        m3 = central3 + 3.0 * m1 * central2 + m1 ** 3
        logger.debug(f"Sheppard's correction applied for class width {s.bin_width}")

    return SampleMoments(m1=m1, m2=m2, m3=m3, central2=central2, central3=central3, n=s.n)


def _log_gammas(delta: float) -> Tuple[float, float, float]:
    return tuple(float(gammaln(1.0 + k / delta)) for k in (1, 2, 3))


def shape_equation(delta: float) -> float:
    """Skewness of Weibull(delta), the right-hand side of the moment equation.

    Ratios are formed in log space, so delta down to 0.02 (Gamma(151)) and up
    to 500 are evaluated without overflow.

    Raises:
        DomainError: If delta <= 0
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    lg1, lg2, lg3 = _log_gammas(delta)
    # r1 = G1^2/G2 <= 1, r3 = G3/G2^1.5
    log_r1 = 2.0 * lg1 - lg2
    r1 = math.exp(log_r1)
    r3 = math.exp(lg3 - 1.5 * lg2)
    numerator = r3 - 3.0 * math.sqrt(r1) + 2.0 * r1 ** 1.5
    denominator = (-math.expm1(log_r1)) ** 1.5
    return numerator / denominator


def _check_monotone(cfg: MmeConfig) -> Tuple[float, float]:
    grid = np.geomspace(cfg.delta_min, cfg.delta_max, cfg.monotonicity_points)
    values = np.array([shape_equation(d) for d in grid])
    if not np.all(np.diff(values) < 0):
        logger.warning(
            f"shape equation is not strictly decreasing on [{cfg.delta_min}, {cfg.delta_max}]"
        )
    return float(values[-1]), float(values[0])


def _moment_mismatch(params: RwParams, moments: SampleMoments) -> float:
    """Largest relative deviation of the model's raw moments from the sample's."""
    scale = abs(moments.m1) + math.sqrt(moments.central2)
    worst = 0.0
    for j, (model, observed) in enumerate(zip(raw_moments(params), (moments.m1, moments.m2, moments.m3)), 1):
        worst = max(worst, abs(model - observed) / max(abs(observed), scale ** j))
    return worst


def _solve(moments: SampleMoments, cfg: MmeConfig) -> EstimationResult:
    if not moments.central2 > 0:
        raise SampleError("moment estimation needs a positive variance")

    skew = moments.skewness
    target = -skew
    low, high = _check_monotone(cfg)
    if not low < target < high:
        raise NoSolutionError(
            f"sample skewness {skew:.6g} is outside the attainable range "
            f"({-high:.6g}, {-low:.6g}) for delta in [{cfg.delta_min}, {cfg.delta_max}]"
        )

    evaluations = 0

    def equation(log_delta: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return shape_equation(math.exp(log_delta)) - target

    opt = get_optimizer_config()
    log_delta = find_root_bracketed(
        equation,
        BracketSpec(math.log(cfg.delta_min), math.log(cfg.delta_max), opt.root_tolerance, opt.max_iterations),
    )
    delta = math.exp(log_delta)

    lg1, lg2, _ = _log_gammas(delta)
    log_beta = 0.5 * (math.log(moments.central2) - lg2 - math.log(-math.expm1(2.0 * lg1 - lg2)))
    beta = math.exp(log_beta)
    gamma = moments.m1 + beta * math.exp(lg1)
    params = RwParams(delta, beta, gamma)

    mismatch = _moment_mismatch(params, moments)
    converged = mismatch <= cfg.moment_check_tolerance
    notes = ""
    if not converged:
        notes = f"raw moments reproduced only to {mismatch:.2e} relative"
        logger.warning(f"MME: {notes}")

    logger.debug(f"MME solved shape equation in {evaluations} evaluations: delta={delta:.6g}")
    return EstimationResult(
        method=Method.MME,
        params=params,
        log_likelihood=None,
        converged=converged,
        iterations=evaluations,
        notes=notes,
        extras={"skewness": skew, "moment_mismatch": mismatch},
    )


def fit_mme(s: Sample, config: Optional[MmeConfig] = None) -> EstimationResult:
    """Method-of-moments fit.

    Args:
        s: Sample with n > 2 and two distinct values
        config: Solver bracket and checks (default from settings.json)

    Returns:
        EstimationResult with log_likelihood None

    Raises:
        SampleError: If the sample is too small or degenerate
        NoSolutionError: If the sample skewness is outside the range of the shape equation

    Example:
        >>> fit_mme(Sample.of([-9.1, -4.0, -2.2, -1.7, -0.3])).params
    """
    cfg = config or get_mme_config()
    s.require_estimable()
    logger.info(f"MME fit on n={s.n}")
    result = _solve(sample_moments(s, cfg.sheppard_correction), cfg)
    if s.bin_width and cfg.sheppard_correction:
        result.notes = "; ".join(filter(None, [result.notes, f"Sheppard's correction, class width {s.bin_width:g}"]))
    return result


def fit_mme_from_moments(
    m1: float, m2: float, m3: float, config: Optional[MmeConfig] = None
) -> EstimationResult:
    """Method-of-moments fit from raw moments E[X], E[X^2], E[X^3]."""
    cfg = config or get_mme_config()
    central2 = m2 - m1 ** 2
    if not central2 > 0:
        raise DomainError(f"moments imply a nonpositive variance ({central2:.6g})")
    central3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 ** 3
    return _solve(SampleMoments(m1=m1, m2=m2, m3=m3, central2=central2, central3=central3), cfg)
