"""Monte Carlo comparison harness.

Components:
- SimConfig: Validated grid/seed settings (JSON document, schema_version 1)
- run_cell/run: Bias and RMSE per (method, delta, n) over common samples
- joint_metrics: Mean bias and root trace of the MSE matrix
- render_tables/read_tables_csv: CSV and text tables
"""
from .study import (
    SEED_ENV,
    CellReport,
    QuadratureSettings,
    SimConfig,
    SimReport,
    derive_seed,
    joint_metrics,
    run,
    run_cell,
)
from .tables import METRIC_COLUMNS, best_methods, read_tables_csv, render_tables, to_frame

__all__ = [
    "METRIC_COLUMNS",
    "SEED_ENV",
    "CellReport",
    "QuadratureSettings",
    "SimConfig",
    "SimReport",
    "best_methods",
    "derive_seed",
    "joint_metrics",
    "read_tables_csv",
    "render_tables",
    "run",
    "run_cell",
    "to_frame",
]
