"""Monte Carlo comparison of the estimators.

For every (delta, n) cell, `replications` samples are drawn from the reflected
Weibull with the configured beta and gamma and every method is fitted to the
same samples. Per-parameter bias and RMSE are accumulated in replication
order; failed fits are counted and left out of the averages.

Seeds are derived from (base_seed, delta, n, replication) with SHA-256, so a
cell's numbers do not depend on which other cells run or in which order.
"""
from __future__ import annotations

import hashlib
import logging
import math
import os
import pickle
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator

from ..config import get_quadrature_config, get_simulation_defaults
from ..distribution import RwParams, Sample, sample
from ..errors import DomainError, RwFitError
from ..estimation import EstimationPipeline, EstimationResult, Method, PipelineConfig
from ..numerics import QuadratureSpec

logger = logging.getLogger(__name__)

SEED_ENV = "RWFIT_SEED"
SCHEMA_VERSION = 1

Estimator = Callable[[Sample], Union[EstimationResult, RwParams]]


# =============================================================================
# CONFIGURATION
# =============================================================================

def _default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    if value is not None:
        try:
            return int(value)
        except ValueError:
            logger.warning(f"ignoring non-integer {SEED_ENV}={value!r}")
    return get_simulation_defaults().base_seed


class QuadratureSettings(BaseModel):
    """Quadrature tolerances as carried in a SimConfig document."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    relative_tolerance: PositiveFloat = Field(default_factory=lambda: get_quadrature_config().relative_tolerance)
    absolute_tolerance: PositiveFloat = Field(default_factory=lambda: get_quadrature_config().absolute_tolerance)
    max_subdivisions: int = Field(default_factory=lambda: get_quadrature_config().max_subdivisions, ge=10)

    def to_spec(self) -> QuadratureSpec:
        return QuadratureSpec(self.relative_tolerance, self.absolute_tolerance, self.max_subdivisions)


class SimConfig(BaseModel):
    """Simulation grid and settings; defaults come from settings.json.

    The base seed defaults to $RWFIT_SEED when set.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    schema_version: Literal[1] = SCHEMA_VERSION
    delta_values: List[PositiveFloat] = Field(default_factory=lambda: list(get_simulation_defaults().delta_values))
    n_values: List[int] = Field(default_factory=lambda: list(get_simulation_defaults().n_values))
    replications: int = Field(default_factory=lambda: get_simulation_defaults().replications, ge=1)
    beta_true: PositiveFloat = Field(default_factory=lambda: get_simulation_defaults().beta_true)
    gamma_true: float = Field(default_factory=lambda: get_simulation_defaults().gamma_true)
    methods: List[Method] = Field(default_factory=lambda: [Method.parse(m) for m in get_simulation_defaults().methods])
    base_seed: int = Field(default_factory=_default_seed)
    workers: int = Field(default_factory=lambda: get_simulation_defaults().workers, ge=1)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)

    @field_validator("delta_values", "n_values", "methods")
    @classmethod
    def _nonempty(cls, value: list) -> list:
        if not value:
            raise ValueError("must not be empty")
        return value

    @field_validator("n_values")
    @classmethod
    def _estimable_sizes(cls, value: List[int]) -> List[int]:
        small = [n for n in value if n <= 2]
        if small:
            raise ValueError(f"sample sizes must exceed 2, got {small}")
        return value

    @field_validator("methods", mode="before")
    @classmethod
    def _parse_methods(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            parsed = []
            for m in value:
                method = Method.parse(m) if isinstance(m, (str, Method)) else m
                if method not in parsed:
                    parsed.append(method)
            return parsed
        return value

    @property
    def cell_count(self) -> int:
        return len(self.delta_values) * len(self.n_values) * len(self.methods)


# =============================================================================
# REPORT TYPES
# =============================================================================

@dataclass
class CellReport:
    """Bias and RMSE of one method at one (delta, n)."""
    method: Method
    delta: float
    n: int
    replications: int
    failure_count: int = 0
    bias_location: float = math.nan
    rmse_location: float = math.nan
    bias_shape: float = math.nan
    rmse_shape: float = math.nan
    bias_scale: float = math.nan
    rmse_scale: float = math.nan
    joint_bias: float = math.nan
    joint_rmse: float = math.nan

    @property
    def available(self) -> bool:
        return self.failure_count < self.replications

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["method"] = self.method.value
        return out


@dataclass
class SimReport:
    config: SimConfig
    cells: List[CellReport] = field(default_factory=list)

    def cell(self, method: "Method | str", delta: float, n: int) -> CellReport:
        method = Method.parse(method)
        for c in self.cells:
            if c.method == method and c.delta == delta and c.n == n:
                return c
        raise KeyError(f"no cell for {method.value}, delta={delta}, n={n}")


# =============================================================================
# METRICS
# =============================================================================

def joint_metrics(biases: Sequence[float], rmses: Sequence[float]) -> Tuple[float, float]:
    """(mean of the three biases, Euclidean norm of the three RMSEs)."""
    biases = np.asarray(biases, dtype=float)
    rmses = np.asarray(rmses, dtype=float)
    if biases.shape != (3,) or rmses.shape != (3,):
        raise DomainError("joint metrics need exactly three biases and three RMSEs")
    return float(np.mean(biases)), float(np.sqrt(np.sum(rmses ** 2)))


def derive_seed(base_seed: int, delta: float, n: int, replication: int) -> int:
    """Replication seed, independent of the method (common random numbers)."""
    digest = hashlib.sha256(f"{float(delta)!r}:{int(n)}:{int(replication)}".encode("utf-8")).digest()
    return (int.from_bytes(digest[:8], "big") ^ int(base_seed)) & ((1 << 63) - 1)


# =============================================================================
# RUNNER
# =============================================================================

def _default_estimator(method: Method, config: SimConfig) -> Estimator:
    pipeline = EstimationPipeline(PipelineConfig(quadrature=config.quadrature.to_spec()))
    return lambda s: pipeline.fit(s, method)


def run_cell(
    method: "Method | str",
    delta0: float,
    n: int,
    config: SimConfig,
    estimator: Optional[Estimator] = None,
) -> CellReport:
    """Bias and RMSE of one method over the replications of one cell.

    Args:
        method: Estimator name
        delta0: True shape
        n: Sample size
        config: Replications, true beta/gamma and base seed
        estimator: Replacement for the method's fit (returns a result or parameters)

    Returns:
        CellReport; metrics are NaN when every replication failed
    """
    method = Method.parse(method)
    fit = estimator or _default_estimator(method, config)
    truth = RwParams(delta0, config.beta_true, config.gamma_true)

    errors: List[Tuple[float, float, float]] = []
    failures = 0
    for r in range(config.replications):
        draw = sample(n, truth, derive_seed(config.base_seed, delta0, n, r))
        try:
            out = fit(draw)
        except (RwFitError, ArithmeticError) as e:
            failures += 1
            logger.debug(f"{method.value} delta={delta0} n={n} replication {r} failed: {e}")
            continue
        est = out.params if isinstance(out, EstimationResult) else out
        errors.append((est.gamma - truth.gamma, est.delta - truth.delta, est.beta - truth.beta))

    cell = CellReport(method=method, delta=float(delta0), n=int(n), replications=config.replications, failure_count=failures)
    if failures:
        logger.warning(f"{method.value} delta={delta0} n={n}: {failures}/{config.replications} replications failed")
    if not errors:
        logger.warning(f"{method.value} delta={delta0} n={n}: cell unavailable")
        return cell

    e = np.array(errors)
    bias = e.mean(axis=0)
    rmse = np.sqrt((e ** 2).mean(axis=0))
    cell.bias_location, cell.bias_shape, cell.bias_scale = (float(b) for b in bias)
    cell.rmse_location, cell.rmse_shape, cell.rmse_scale = (float(x) for x in rmse)
    cell.joint_bias, cell.joint_rmse = joint_metrics(bias, rmse)
    return cell


def _picklable(obj: Any) -> bool:
    try:
        pickle.dumps(obj)
    except (pickle.PicklingError, AttributeError, TypeError):
        return False
    return True


def _run_task(task: Tuple[Method, float, int, SimConfig, Optional[Estimator]]) -> CellReport:
    method, delta0, n, config, estimator = task
    return run_cell(method, delta0, n, config, estimator)


def run(config: Optional[SimConfig] = None, estimator: Optional[Estimator] = None) -> SimReport:
    """Run every (delta, n, method) cell of the grid.

    Cells are listed by delta, then n, then method. With workers > 1 they run
    in a process pool; results are identical to a serial run. A custom
    estimator must be picklable (a module-level function) to run in the
    pool; otherwise the grid runs serially.
    """
    config = config or SimConfig()
    workers = config.workers
    if workers > 1 and estimator is not None and not _picklable(estimator):
        logger.warning("custom estimator cannot be sent to worker processes; running serially")
        workers = 1
    tasks = [
        (method, float(delta0), int(n), config, estimator)
        for delta0 in config.delta_values
        for n in config.n_values
        for method in config.methods
    ]
    logger.info(f"Simulation: {len(tasks)} cells x {config.replications} replications, {workers} worker(s)")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_task, tasks))
    else:
        cells = []
        for i, task in enumerate(tasks, 1):
            cells.append(_run_task(task))
            logger.info(f"Cell {i}/{len(tasks)}: {task[0].value} delta={task[1]} n={task[2]}")
    return SimReport(config=config, cells=cells)
