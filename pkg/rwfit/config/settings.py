"""Configuration loaded from settings.json."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List
import json

_CONFIG_PATH = Path(__file__).parent / "settings.json"


def _load_json() -> dict[str, Any]:
    with open(_CONFIG_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


@dataclass
class QuadratureConfig:
    relative_tolerance: float = 1e-6
    absolute_tolerance: float = 1e-12
    max_subdivisions: int = 2000
    outer_relative_tolerance: float = 1e-5
    log_cutoff: float = 60.0  # integrand below peak - log_cutoff is dropped


@dataclass
class OptimizerConfig:
    relative_tolerance: float = 1e-5
    root_tolerance: float = 1e-12
    max_iterations: int = 500


@dataclass
class MleConfig:
    boundary_epsilon: float = 1e-14  # relative to the sample spread
    gradient_tolerance: float = 1e-6
    n_starts: int = 3
    start_perturbation: float = 0.25
    max_iterations: int = 2000


@dataclass
class MmeConfig:
    delta_min: float = 0.02
    delta_max: float = 500.0
    monotonicity_points: int = 50
    sheppard_correction: bool = True
    moment_check_tolerance: float = 1e-6


@dataclass
class LspfeConfig:
    delta_min: float = 1e-3
    delta_max: float = 1e3
    tie_jitter: float = 1e-9


@dataclass
class SimulationDefaults:
    delta_values: List[float] = field(default_factory=lambda: [0.5, 1.0, 2.0, 3.0, 4.0, 5.0])
    n_values: List[int] = field(default_factory=lambda: [20, 50, 100])
    replications: int = 100
    beta_true: float = 10.0
    gamma_true: float = 0.0
    methods: List[str] = field(default_factory=lambda: ["LSPFE", "MLE", "MME"])
    base_seed: int = 20240917
    workers: int = 1


@dataclass
class IoConfig:
    plot_points: int = 200
    plot_margin: float = 0.05


_config: dict[str, Any] | None = None


def _get_config() -> dict[str, Any]:
    global _config
    if _config is None:
        _config = _load_json()
    return _config


def get_quadrature_config() -> QuadratureConfig:
    return QuadratureConfig(**_get_config().get("quadrature", {}))


def get_optimizer_config() -> OptimizerConfig:
    return OptimizerConfig(**_get_config().get("optimizer", {}))


def get_mle_config() -> MleConfig:
    return MleConfig(**_get_config().get("mle", {}))


def get_mme_config() -> MmeConfig:
    return MmeConfig(**_get_config().get("mme", {}))


def get_lspfe_config() -> LspfeConfig:
    return LspfeConfig(**_get_config().get("lspfe", {}))


def get_simulation_defaults() -> SimulationDefaults:
    return SimulationDefaults(**_get_config().get("simulation", {}))


def get_io_config() -> IoConfig:
    return IoConfig(**_get_config().get("io", {}))
