"""FitReport: the JSON document written by `rwfit fit`."""
from __future__ import annotations

import logging
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import kstest

from .. import __version__
from ..distribution import RwParams, Sample, cdf
from ..estimation import EstimationResult, Method, PipelineResult

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class InputDescriptor(BaseModel):
    path: str = ""
    format: Literal["raw", "grouped"] = "raw"
    negated: bool = False
    n: int = 0
    bin_width: Optional[float] = None


class DiagnosticsModel(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    delta_hat: float
    gamma_init: float
    beta_init: float
    gamma_corrected: float
    beta_corrected: float
    loglik_at_max: float
    quadrature_error: float
    bracket_boundary: bool


class MethodFit(BaseModel):
    """One estimator's output with its goodness of fit."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    method: Method
    delta: float
    beta: float
    gamma: float
    log_likelihood: Optional[float] = None
    converged: bool = True
    boundary_hit: bool = False
    iterations: int = 0
    notes: str = ""
    diagnostics: Optional[DiagnosticsModel] = None
    ks_statistic: float = Field(ge=0.0, le=1.0)

    @property
    def params(self) -> RwParams:
        return RwParams(self.delta, self.beta, self.gamma)


class FitReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: Literal[1] = SCHEMA_VERSION
    input: InputDescriptor
    method: str
    results: List[MethodFit] = Field(default_factory=list)
    failures: Dict[str, str] = Field(default_factory=dict)
    tool_version: str = __version__
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

    def result(self, method: "Method | str") -> MethodFit:
        method = Method.parse(method)
        for r in self.results:
            if r.method == method:
                return r
        raise KeyError(f"no {method.value} result in report")


def ks_statistic(s: Sample, params: RwParams) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF and the fitted CDF."""
    return float(kstest(s.values, lambda x: cdf(x, params)).statistic)


def method_fit(s: Sample, result: EstimationResult) -> MethodFit:
    return MethodFit(
        method=result.method,
        delta=result.params.delta,
        beta=result.params.beta,
        gamma=result.params.gamma,
        log_likelihood=result.log_likelihood,
        converged=result.converged,
        boundary_hit=result.boundary_hit,
        iterations=result.iterations,
        notes=result.notes,
        diagnostics=DiagnosticsModel(**asdict(result.diagnostics)) if result.diagnostics else None,
        ks_statistic=ks_statistic(s, result.params),
    )


def build_fit_report(
    s: Sample,
    outcome: PipelineResult,
    input_descriptor: InputDescriptor,
    method_label: str,
) -> FitReport:
    """Assemble a report from pipeline output."""
    return FitReport(
        input=input_descriptor,
        method=method_label,
        results=[method_fit(s, r) for r in outcome.results.values()],
        failures={m.value: msg for m, msg in outcome.failures.items()},
    )


def write_report(report: FitReport, path: Union[str, Path]) -> None:
    path = Path(path)
    path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"Wrote fit report to {path}")


def read_report(path: Union[str, Path]) -> FitReport:
    return FitReport.model_validate_json(Path(path).read_text(encoding="utf-8"))
