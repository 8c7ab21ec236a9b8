"""Reflected Weibull fitting.

One-liner API:

    fit([-152.7, -172.0, -172.5, ...], method="lspfe")

That's it.
"""
from __future__ import annotations

from typing import Iterable, Union

from .distribution import Sample
from .estimation import EstimationPipeline, EstimationResult, Method, PipelineResult

Data = Union[Sample, Iterable[float]]


def _as_sample(data: Data, negate: bool) -> Sample:
    s = data if isinstance(data, Sample) else Sample.of(data)
    return s.negated() if negate else s


def fit(data: Data, method: "Method | str" = Method.LSPFE, negate: bool = False) -> EstimationResult:
    """Fit the reflected Weibull distribution to data.

    Args:
        data: Sample or iterable of observations
        method: "mle", "mme" or "lspfe"
        negate: Fit -x instead (Weibull-form data)

    Returns:
        EstimationResult with the (delta, beta, gamma) estimates

    Raises:
        SampleError: If n <= 2 or all values are equal
        NoSolutionError: If moment matching has no solution
        ConvergenceError: If the numerical search fails

    Example:
        result = fit(lifetimes, method="mle", negate=True)
        print(result.params)
    """
    return EstimationPipeline().fit(_as_sample(data, negate), method)


def fit_all(data: Data, negate: bool = False) -> PipelineResult:
    """Fit all three methods; failures are collected per method."""
    return EstimationPipeline().run(_as_sample(data, negate))
