"""Numerical kernels - quadrature, bracketed search, log-space arithmetic."""
from .logspace import log_power_mean, log_sum_exp
from .optimize import BracketSpec, UnimodalMaximum, find_root_bracketed, maximize_unimodal
from .quadrature import PeakIntegral, QuadratureSpec, integrate_1d, integrate_exp_peak

__all__ = [
    "BracketSpec",
    "PeakIntegral",
    "QuadratureSpec",
    "UnimodalMaximum",
    "find_root_bracketed",
    "integrate_1d",
    "integrate_exp_peak",
    "log_power_mean",
    "log_sum_exp",
    "maximize_unimodal",
]
