"""CSV ingestion for raw and grouped samples."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..distribution import Sample
from ..errors import SampleError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RAW_HEADER = "value"
GROUPED_COLUMNS = ["lower", "upper", "frequency"]


@dataclass
class GroupedSample:
    """Class intervals with frequencies.

    Intervals must be ascending, non-overlapping and of positive width.
    """
    intervals: List[Tuple[float, float]]
    frequencies: List[int]

    def __post_init__(self):
        if len(self.intervals) != len(self.frequencies):
            raise SampleError("intervals and frequencies differ in length")
        if not self.intervals:
            raise SampleError("grouped sample has no intervals")
        previous_upper = -np.inf
        for i, (lower, upper) in enumerate(self.intervals):
            if not upper > lower:
                raise SampleError(f"interval {i + 1} ({lower}, {upper}) has zero or negative width")
            if lower < previous_upper:
                raise SampleError(f"interval {i + 1} ({lower}, {upper}) overlaps the previous one")
            previous_upper = upper
        if any(f < 0 for f in self.frequencies):
            raise SampleError("frequencies must be nonnegative")

    @property
    def total(self) -> int:
        return int(sum(self.frequencies))

    @property
    def midpoints(self) -> np.ndarray:
        return np.array([(lo + hi) / 2.0 for lo, hi in self.intervals])

    @property
    def common_width(self) -> Optional[float]:
        widths = np.array([hi - lo for lo, hi in self.intervals])
        return float(widths[0]) if np.allclose(widths, widths[0], rtol=1e-9, atol=0.0) else None


def read_raw_csv(path: PathLike) -> Sample:
    """Read one numeric column, optionally headed "value".

    Args:
        path: CSV file

    Returns:
        Sorted Sample

    Raises:
        OSError: If the file cannot be opened
        SampleError: If the file is empty or a row is not a single number
            (`line` gives the 1-based line)
    """
    path = Path(path)
    try:
        frame = pd.read_csv(
            path, header=None, dtype=str, skip_blank_lines=False, keep_default_na=False, skipinitialspace=True
        )
    except pd.errors.EmptyDataError:
        raise SampleError(f"{path}: file is empty") from None
    except pd.errors.ParserError as e:
        raise SampleError(f"{path}: {e}") from e
    if frame.shape[1] != 1:
        raise SampleError(f"{path}: expected one column, found {frame.shape[1]}")

    cells = frame.iloc[:, 0].str.strip()
    numbers = pd.to_numeric(cells, errors="coerce")
    blank = cells == ""
    bad = numbers.isna() & ~blank
    if bad.any() and cells.iloc[0].lower() == RAW_HEADER:
        bad.iloc[0] = False
        blank.iloc[0] = True
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        raise SampleError(f"{path}: line {row + 1}: not a number: {cells.iloc[row]!r}", line=row + 1)

    values = numbers[~blank].to_numpy(dtype=float)
    if values.size == 0:
        raise SampleError(f"{path}: no values")
    logger.info(f"Read {values.size} values from {path}")
    return Sample(values=values, source=str(path))


def read_grouped_csv(path: PathLike) -> GroupedSample:
    """Read columns lower, upper, frequency.

    Raises:
        OSError: If the file cannot be opened
        SampleError: On missing columns, non-numeric cells or invalid intervals
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise SampleError(f"{path}: file is empty") from None
    except pd.errors.ParserError as e:
        raise SampleError(f"{path}: {e}") from e

    frame.columns = [str(c).strip().lower() for c in frame.columns]
    missing = [c for c in GROUPED_COLUMNS if c not in frame.columns]
    if missing:
        raise SampleError(f"{path}: missing columns {missing}; expected header lower,upper,frequency")

    numeric = frame[GROUPED_COLUMNS].apply(pd.to_numeric, errors="coerce")
    bad_rows = numeric.isna().any(axis=1).to_numpy()
    if bad_rows.any():
        row = int(np.flatnonzero(bad_rows)[0])
        # header is line 1
        raise SampleError(f"{path}: line {row + 2}: non-numeric cell", line=row + 2)
    freq = numeric["frequency"].to_numpy()
    if np.any(freq != np.round(freq)):
        raise SampleError(f"{path}: frequencies must be whole numbers")

    grouped = GroupedSample(
        intervals=list(zip(numeric["lower"].astype(float), numeric["upper"].astype(float))),
        frequencies=[int(f) for f in freq],
    )
    logger.info(f"Read {len(grouped.intervals)} classes ({grouped.total} observations) from {path}")
    return grouped


def expand_grouped(g: GroupedSample, source: str = "") -> Sample:
    """Replicate each class midpoint by its frequency.

    The common class width, when all widths agree, is kept as the sample's
    bin_width for Sheppard's correction.
    """
    values = np.repeat(g.midpoints, g.frequencies)
    if values.size == 0:
        raise SampleError("grouped sample has zero total frequency")
    return Sample(values=values, bin_width=g.common_width, source=source)
