"""Parameter estimation - maximum likelihood, moments, location/scale free.

Components:
- mle: Likelihood, score and constrained maximum likelihood fit
- mme: Sample moments, shape equation and moment fit
- lspfe: W statistics, W-likelihood by nested quadrature, shape search and
  corrected location/scale
- EstimationPipeline: Runs several estimators on one sample
"""
from .datatypes import (
    EstimationResult,
    LocationScale,
    LspfeDiagnostics,
    Method,
    SampleMoments,
    WStats,
)
from .lspfe import (
    compute_w,
    estimate_location_scale,
    estimate_shape,
    fit_lspfe,
    w_log_likelihood,
    w_log_likelihood_derivative,
    w_log_likelihood_exponential,
)
from .mle import fit_mle, log_likelihood, score
from .mme import fit_mme, fit_mme_from_moments, sample_moments, shape_equation
from .pipeline import EstimationPipeline, PipelineConfig, PipelineResult, fit_all

__all__ = [
    "EstimationPipeline",
    "EstimationResult",
    "LocationScale",
    "LspfeDiagnostics",
    "Method",
    "PipelineConfig",
    "PipelineResult",
    "SampleMoments",
    "WStats",
    "compute_w",
    "estimate_location_scale",
    "estimate_shape",
    "fit_all",
    "fit_lspfe",
    "fit_mle",
    "fit_mme",
    "fit_mme_from_moments",
    "log_likelihood",
    "sample_moments",
    "score",
    "shape_equation",
    "w_log_likelihood",
    "w_log_likelihood_derivative",
    "w_log_likelihood_exponential",
]
