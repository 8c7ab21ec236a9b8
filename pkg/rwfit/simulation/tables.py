"""Simulation tables: one row per (delta, n, method), location/shape/scale/joint x bias/RMSE."""
from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import List, Union

import pandas as pd

from ..errors import DomainError
from ..estimation import Method
from .study import CellReport, SimReport

logger = logging.getLogger(__name__)

KEY_COLUMNS = ["delta", "n", "method", "replications", "failures"]
METRIC_COLUMNS = [
    "location_bias", "location_rmse",
    "shape_bias", "shape_rmse",
    "scale_bias", "scale_rmse",
    "joint_bias", "joint_rmse",
]

_FIELDS = {
    "location_bias": "bias_location", "location_rmse": "rmse_location",
    "shape_bias": "bias_shape", "shape_rmse": "rmse_shape",
    "scale_bias": "bias_scale", "scale_rmse": "rmse_scale",
    "joint_bias": "joint_bias", "joint_rmse": "joint_rmse",
}


def to_frame(report: SimReport) -> pd.DataFrame:
    rows = []
    for c in report.cells:
        row = {"delta": c.delta, "n": c.n, "method": c.method.value, "replications": c.replications,
               "failures": c.failure_count}
        row.update({col: getattr(c, attr) for col, attr in _FIELDS.items()})
        rows.append(row)
    return pd.DataFrame(rows, columns=KEY_COLUMNS + METRIC_COLUMNS)


def render_tables(report: SimReport, fmt: str = "csv") -> str:
    """Render the report as CSV (full precision) or an aligned text table.

    Unavailable cells show NaN metrics.
    """
    frame = to_frame(report)
    if fmt == "csv":
        return frame.to_csv(index=False)
    if fmt == "text":
        return frame.to_string(index=False, float_format=lambda v: f"{v:.4f}")
    raise DomainError(f"unknown table format '{fmt}'. Available: csv, text")


def best_methods(report: SimReport) -> pd.DataFrame:
    """Method with the smallest joint RMSE in each (delta, n) cell."""
    frame = to_frame(report).dropna(subset=["joint_rmse"])
    if frame.empty:
        return pd.DataFrame(columns=["delta", "n", "method", "joint_rmse"])
    best = frame.loc[frame.groupby(["delta", "n"], sort=False)["joint_rmse"].idxmin()]
    return best[["delta", "n", "method", "joint_rmse"]].reset_index(drop=True)


def read_tables_csv(source: Union[str, Path]) -> List[CellReport]:
    """Parse CSV written by render_tables; accepts a path or the CSV text itself."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        frame = pd.read_csv(source, float_precision="round_trip")
    else:
        frame = pd.read_csv(io.StringIO(source), float_precision="round_trip")
    missing = [c for c in KEY_COLUMNS + METRIC_COLUMNS if c not in frame.columns]
    if missing:
        raise DomainError(f"simulation table is missing columns {missing}")

    cells = []
    for row in frame.itertuples(index=False):
        values = row._asdict()
        cells.append(CellReport(
            method=Method.parse(values["method"]),
            delta=float(values["delta"]),
            n=int(values["n"]),
            replications=int(values["replications"]),
            failure_count=int(values["failures"]),
            **{attr: float(values[col]) for col, attr in _FIELDS.items()},
        ))
    logger.debug(f"read {len(cells)} simulation cells")
    return cells
