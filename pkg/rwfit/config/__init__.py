"""Configuration module."""

from .settings import (
    IoConfig,
    LspfeConfig,
    MleConfig,
    MmeConfig,
    OptimizerConfig,
    QuadratureConfig,
    SimulationDefaults,
    get_io_config,
    get_lspfe_config,
    get_mle_config,
    get_mme_config,
    get_optimizer_config,
    get_quadrature_config,
    get_simulation_defaults,
)

__all__ = [
    "IoConfig",
    "LspfeConfig",
    "MleConfig",
    "MmeConfig",
    "OptimizerConfig",
    "QuadratureConfig",
    "SimulationDefaults",
    "get_io_config",
    "get_lspfe_config",
    "get_mle_config",
    "get_mme_config",
    "get_optimizer_config",
    "get_quadrature_config",
    "get_simulation_defaults",
]
