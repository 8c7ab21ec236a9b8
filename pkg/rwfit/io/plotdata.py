"""Fitted-versus-empirical curves on a grid, for external plotting."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from ..config import get_io_config
from ..distribution import Sample, cdf, pdf
from ..estimation import EstimationResult, Method

logger = logging.getLogger(__name__)


def plot_data(
    s: Sample,
    results: Dict[Method, EstimationResult],
    points: Optional[int] = None,
    margin: Optional[float] = None,
) -> pd.DataFrame:
    """Empirical and fitted CDF/PDF columns over [min - margin*spread, largest gamma].

    Columns: x, empirical_cdf, histogram_density, then fitted_cdf_<method>
    and fitted_pdf_<method> for each result.
    """
    cfg = get_io_config()
    points = points or cfg.plot_points
    margin = cfg.plot_margin if margin is None else margin

    upper = max([s.maximum] + [r.params.gamma for r in results.values()])
    x = np.linspace(s.minimum - margin * s.spread, upper, points)

    frame = pd.DataFrame({"x": x})
    frame["empirical_cdf"] = np.searchsorted(s.values, x, side="right") / s.n

    density, edges = np.histogram(s.values, bins="auto", density=True)
    bin_index = np.searchsorted(edges, x, side="right") - 1
    inside = (bin_index >= 0) & (bin_index < density.size)
    # the last edge belongs to the last bin
    bin_index = np.where(x == edges[-1], density.size - 1, bin_index)
    inside |= x == edges[-1]
    frame["histogram_density"] = np.where(inside, density[np.clip(bin_index, 0, density.size - 1)], 0.0)

    for method, result in results.items():
        name = method.value.lower()
        frame[f"fitted_cdf_{name}"] = cdf(x, result.params)
        frame[f"fitted_pdf_{name}"] = pdf(x, result.params)
    return frame


def write_plot_data(frame: pd.DataFrame, path: Union[str, Path]) -> None:
    frame.to_csv(path, index=False)
    logger.info(f"Wrote {len(frame)} plot points to {path}")
