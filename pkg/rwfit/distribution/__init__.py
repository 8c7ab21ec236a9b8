"""Reflected Weibull distribution - density, CDF, quantiles, sampling, moments.

Components:
- RwParams: Validated (delta, beta, gamma) triple
- Sample: Sorted observations
- pdf/cdf/quantile/sample: Distribution functions and inversion sampler
- moment_gm/raw_moments/expected_max: Moment and order-statistic formulas
"""
from .datatypes import RwParams, Sample
from .reflected_weibull import (
    cdf,
    central_moments,
    expected_max,
    logpdf,
    moment_gm,
    pdf,
    quantile,
    raw_moment,
    raw_moments,
    sample,
)

__all__ = [
    "RwParams",
    "Sample",
    "cdf",
    "central_moments",
    "expected_max",
    "logpdf",
    "moment_gm",
    "pdf",
    "quantile",
    "raw_moment",
    "raw_moments",
    "sample",
]
