"""Data ingestion, reports and the command-line interface.

Components:
- readers: Raw and grouped CSV input
- report: FitReport JSON with Kolmogorov-Smirnov summaries
- plotdata: Empirical and fitted curves on a grid
- cli: `rwfit fit` / `rwfit simulate`
"""
from .plotdata import plot_data, write_plot_data
from .readers import GroupedSample, expand_grouped, read_grouped_csv, read_raw_csv
from .report import (
    FitReport,
    InputDescriptor,
    MethodFit,
    build_fit_report,
    ks_statistic,
    read_report,
    write_report,
)

__all__ = [
    "FitReport",
    "GroupedSample",
    "InputDescriptor",
    "MethodFit",
    "build_fit_report",
    "expand_grouped",
    "ks_statistic",
    "plot_data",
    "read_grouped_csv",
    "read_raw_csv",
    "read_report",
    "write_plot_data",
    "write_report",
]
