"""Three-parameter reflected Weibull distribution.

If Y is Weibull(delta, beta) then X = gamma - Y is reflected Weibull with
upper endpoint gamma:

    f(x) = (delta/beta) * ((gamma - x)/beta)**(delta - 1) * exp(-((gamma - x)/beta)**delta),  x < gamma
    F(x) = exp(-((gamma - x)/beta)**delta)

Every function accepts scalars or numpy arrays for x/u and returns the same
shape. Gamma-function values go through scipy.special.gammaln.

Usage:
    p = RwParams(delta=2.0, beta=10.0, gamma=0.0)
    sample(100, p, seed=7)
    raw_moments(p)
"""
from __future__ import annotations

import numpy as np
from scipy.special import comb, gammaln

from ..errors import DomainError
from .datatypes import RwParams, Sample

# rng.random() returns multiples of 2**-53 in [0, 1); the shift moves them into (0, 1)
_OPEN_INTERVAL_SHIFT = 2.0 ** -54


def _reduced(x, p: RwParams) -> np.ndarray:
    """(gamma - x)/beta, the Weibull variate behind x."""
    return (p.gamma - np.asarray(x, dtype=float)) / p.beta


def logpdf(x, p: RwParams):
    """Log density; -inf outside the support and at x = gamma."""
    z = _reduced(x, p)
    inside = z > 0
    zs = np.where(inside, z, 1.0)
    with np.errstate(divide="ignore"):
        value = np.log(p.delta) - np.log(p.beta) + (p.delta - 1.0) * np.log(zs) - zs ** p.delta
    out = np.where(inside, value, -np.inf)
    return out if out.ndim else float(out)


def pdf(x, p: RwParams):
    """Density. Zero for x >= gamma, including x = gamma when delta <= 1."""
    out = np.exp(logpdf(x, p))
    return out if np.ndim(out) else float(out)


def cdf(x, p: RwParams):
    """exp(-((gamma - x)/beta)**delta) for x < gamma, 1 otherwise."""
    z = _reduced(x, p)
    out = np.where(z > 0, np.exp(-np.maximum(z, 0.0) ** p.delta), 1.0)
    return out if out.ndim else float(out)


def quantile(u, p: RwParams):
    """Inverse CDF: gamma - beta*(-ln u)**(1/delta).

    Raises:
        DomainError: If any u is outside the open interval (0, 1)
    """
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0) & (u < 1))):
        raise DomainError("quantile requires 0 < u < 1")
    out = p.gamma - p.beta * (-np.log(u)) ** (1.0 / p.delta)
    return out if out.ndim else float(out)


def sample(n: int, p: RwParams, seed: int) -> Sample:
    """Draw n values by inversion from a PCG64 stream keyed by seed.

    Same (n, p, seed) gives the same values bit for bit.
    """
    if n < 1:
        raise DomainError(f"n >= 1 required, got {n}")
    rng = np.random.default_rng(seed)
    u = rng.random(n) + _OPEN_INTERVAL_SHIFT
    x = p.gamma - p.beta * (-np.log(u)) ** (1.0 / p.delta)
    # rounding can land on gamma when beta*E**(1/delta) is below one ulp of gamma
    x = np.minimum(x, np.nextafter(p.gamma, -np.inf))
    return Sample(values=x, source=f"rw(delta={p.delta}, beta={p.beta}, gamma={p.gamma}) seed={seed}")


def moment_gm(k: int, p: RwParams) -> float:
    """E[(gamma - X)**k] = beta**k * Gamma(k/delta + 1)."""
    if k < 1:
        raise DomainError(f"k >= 1 required, got {k}")
    return float(np.exp(k * np.log(p.beta) + gammaln(k / p.delta + 1.0)))


def raw_moment(j: int, p: RwParams) -> float:
    """E[X**j] by binomial expansion of (gamma - (gamma - X))**j."""
    if j < 0:
        raise DomainError(f"j >= 0 required, got {j}")
    total = 0.0
    for i in range(j + 1):
        gm = 1.0 if i == 0 else moment_gm(i, p)
        total += comb(j, i, exact=True) * p.gamma ** (j - i) * (-1.0) ** i * gm
    return total


def raw_moments(p: RwParams) -> tuple[float, float, float]:
    """(E[X], E[X^2], E[X^3])."""
    mean = p.gamma - moment_gm(1, p)
    second = 2.0 * p.gamma * mean - p.gamma ** 2 + moment_gm(2, p)
    third = p.gamma ** 3 - 3.0 * p.gamma ** 2 * mean + 3.0 * p.gamma * second - moment_gm(3, p)
    return (mean, second, third)


def central_moments(p: RwParams) -> tuple[float, float, float]:
    """(mean, variance, third central moment), computed from Gamma ratios."""
    g1, g2, g3 = (np.exp(gammaln(k / p.delta + 1.0)) for k in (1, 2, 3))
    mean = p.gamma - p.beta * g1
    variance = p.beta ** 2 * (g2 - g1 ** 2)
    # X = gamma - Y flips the sign of the odd central moment
    third = -p.beta ** 3 * (g3 - 3.0 * g1 * g2 + 2.0 * g1 ** 3)
    return (float(mean), float(variance), float(third))


def expected_max(n: int, p: RwParams) -> float:
    """E[X_(n)] = gamma - beta * Gamma(1 + 1/delta) * n**(-1/delta).

    gamma - X_(n) is the minimum of n Weibull(delta, beta) variates, which is
    Weibull(delta, beta * n**(-1/delta)).
    """
    if n < 1:
        raise DomainError(f"n >= 1 required, got {n}")
    return float(p.gamma - p.beta * np.exp(gammaln(1.0 + 1.0 / p.delta) - np.log(n) / p.delta))
