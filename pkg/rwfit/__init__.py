"""Reflected Weibull estimation toolkit.

Fit the three-parameter reflected Weibull distribution with one function call.

Usage:
    from rwfit import fit

    result = fit([-152.7, -172.0, -172.5, -173.3, -193.0], method="mle")
    print(result.params)
"""
__version__ = "0.1.0"

from .distribution import RwParams, Sample
from .estimation import EstimationResult, Method
from .facade import fit, fit_all

__all__ = ["EstimationResult", "Method", "RwParams", "Sample", "__version__", "fit", "fit_all"]
