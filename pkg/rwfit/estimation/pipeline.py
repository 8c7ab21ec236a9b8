"""Estimation pipeline.

Runs one or more estimators on a common sample and collects the results in
the order requested, keeping per-method failures instead of aborting.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Sequence

from ..config import LspfeConfig, MleConfig, MmeConfig
from ..distribution import Sample
from ..errors import RwFitError
from ..numerics import QuadratureSpec
from .datatypes import EstimationResult, Method
from .lspfe import fit_lspfe
from .mle import fit_mle
from .mme import fit_mme

logger = logging.getLogger(__name__)


# =============================================================================
# PIPELINE CONFIGURATION
# =============================================================================

@dataclass
class PipelineConfig:
    """Per-method settings; None fields fall back to settings.json."""
    mle: Optional[MleConfig] = None
    mme: Optional[MmeConfig] = None
    lspfe: Optional[LspfeConfig] = None
    quadrature: Optional[QuadratureSpec] = None


@dataclass
class PipelineResult:
    """Results and failures keyed by method."""
    results: Dict[Method, EstimationResult] = field(default_factory=dict)
    failures: Dict[Method, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


# =============================================================================
# MAIN PIPELINE
# =============================================================================

class EstimationPipeline:
    """Dispatches a sample to the requested estimators."""

    def __init__(self, config: Optional[PipelineConfig] = None):
        self.config = config or PipelineConfig()
        self._estimators: Dict[Method, Callable[[Sample], EstimationResult]] = {
            Method.MLE: lambda s: fit_mle(s, self.config.mle),
            Method.MME: lambda s: fit_mme(s, self.config.mme),
            Method.LSPFE: lambda s: fit_lspfe(s, self.config.quadrature, self.config.lspfe),
        }

    def fit(self, sample: Sample, method: "Method | str") -> EstimationResult:
        """Fit one method; errors propagate."""
        return self._estimators[Method.parse(method)](sample)

    def run(self, sample: Sample, methods: Optional[Iterable["Method | str"]] = None) -> PipelineResult:
        """Fit every requested method (default all), recording failures.

        Args:
            sample: Observations
            methods: Subset of MLE, MME, LSPFE

        Returns:
            PipelineResult with one entry per method in results or failures
        """
        chosen: Sequence[Method] = [Method.parse(m) for m in (methods or list(Method))]
        out = PipelineResult()
        for method in chosen:
            try:
                out.results[method] = self.fit(sample, method)
            except (RwFitError, ArithmeticError) as e:
                logger.warning(f"{method.value} failed: {e}")
                out.failures[method] = str(e) or type(e).__name__
        return out


def fit_all(sample: Sample, config: Optional[PipelineConfig] = None) -> PipelineResult:
    """Run MLE, MME and LSPFE on a common sample."""
    return EstimationPipeline(config).run(sample)
