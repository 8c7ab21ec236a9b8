"""Tests for maximum likelihood estimation."""
import math

import numpy as np
import pytest

from rwfit.config import MleConfig
from rwfit.distribution import RwParams, Sample, logpdf, sample
from rwfit.errors import SampleError
from rwfit.estimation import Method, fit_mle, log_likelihood, score


def _random_instances(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for i in range(count):
        p = RwParams(rng.uniform(0.7, 4.0), rng.uniform(1.0, 10.0), rng.uniform(-5.0, 5.0))
        yield p, sample(int(rng.integers(5, 30)), p, seed=seed * 1000 + i)


class TestLogLikelihood:
    """Tests for log_likelihood."""

    def test_single_exponential_point(self):
        """Test delta=1, beta=1, gamma=0 at x=-1."""
        assert log_likelihood(RwParams(1.0, 1.0, 0.0), Sample.of([-1.0])) == pytest.approx(-1.0, abs=1e-15)

    def test_hand_expansion(self):
        """Test delta=1, beta=2, gamma=0 at {-2, -4}."""
        value = log_likelihood(RwParams(1.0, 2.0, 0.0), Sample.of([-2.0, -4.0]))
        assert value == pytest.approx(-2.0 * math.log(2.0) - 3.0, rel=1e-14)

    def test_outside_support(self):
        """Test that an observation at or above gamma gives -inf."""
        assert log_likelihood(RwParams(1.0, 1.0, 0.0), Sample.of([-1.0, 0.0])) == -math.inf

    def test_equals_sum_of_log_densities(self):
        """Test against the product-of-densities oracle on 50 instances."""
        for p, s in _random_instances(50, seed=3):
            assert log_likelihood(p, s) == pytest.approx(float(np.sum(logpdf(s.values, p))), rel=1e-10, abs=1e-10)


class TestScore:
    """Tests for the analytic score."""

    def test_hand_values(self):
        """Test the score at delta=1, beta=1, gamma=0, x=-1."""
        d_delta, d_beta, _ = score(RwParams(1.0, 1.0, 0.0), Sample.of([-1.0]))
        assert d_delta == pytest.approx(1.0, abs=1e-15)
        assert d_beta == pytest.approx(0.0, abs=1e-15)

    def test_matches_finite_differences(self):
        """Test every component against central differences on 50 instances."""
        for p, s in _random_instances(50, seed=5):
            analytic = score(p, s)
            gap = float(np.min(p.gamma - s.values))
            steps = (1e-5 * p.delta, 1e-5 * p.beta, 1e-4 * gap)
            for k, h in enumerate(steps):
                up = list(p.as_tuple())
                down = list(p.as_tuple())
                up[k] += h
                down[k] -= h
                numeric = (log_likelihood(RwParams(*up), s) - log_likelihood(RwParams(*down), s)) / (2.0 * h)
                assert abs(analytic[k] - numeric) <= 1e-5 * max(abs(numeric), 1.0)


class TestFitMle:
    """Tests for fit_mle."""

    def test_large_sample_consistency(self):
        """Test that n=5000 draws at (2, 10, 0) are recovered."""
        s = sample(5000, RwParams(2.0, 10.0, 0.0), seed=20240917)
        result = fit_mle(s)
        assert result.method == Method.MLE
        assert result.params.delta == pytest.approx(2.0, abs=0.3)
        assert result.params.beta == pytest.approx(10.0, abs=1.5)
        assert result.params.gamma == pytest.approx(0.0, abs=1.5)
        assert result.params.gamma > s.maximum

    def test_bearing_boundary(self, bearing_sample):
        """Test the unbounded-likelihood case on the bearing data."""
        result = fit_mle(bearing_sample)
        assert result.boundary_hit
        assert "unbounded" in result.notes
        assert 0.2 <= result.params.delta <= 0.4
        assert result.params.gamma > bearing_sample.maximum
        assert result.params.gamma - bearing_sample.maximum < 1e-6

    def test_boundary_threshold_configurable(self, bearing_sample):
        """Test that a coarser threshold stops farther from the maximum."""
        result = fit_mle(bearing_sample, MleConfig(boundary_epsilon=1e-8))
        assert result.boundary_hit
        gap = result.params.gamma - bearing_sample.maximum
        assert gap == pytest.approx(1e-8 * bearing_sample.spread, rel=1e-6)

    def test_interior_optimum_is_stationary(self):
        """Test that the scaled score vanishes at an interior optimum."""
        s = sample(300, RwParams(3.0, 10.0, 0.0), seed=12)
        result = fit_mle(s)
        assert not result.boundary_hit
        p = result.params
        d_delta, d_beta, d_gamma = score(p, s)
        assert abs(p.delta * d_delta) < 1e-3
        assert abs(p.beta * d_beta) < 1e-3
        assert abs((p.gamma - s.maximum) * d_gamma) < 1e-3

    @pytest.mark.parametrize("k,c", [(1.0, 250.0), (3.5, -12.0)])
    def test_affine_equivariance(self, k, c):
        """Test that fitting k*x + c gives (delta, k*beta, k*gamma + c)."""
        s = sample(200, RwParams(3.0, 10.0, 0.0), seed=21)
        base = fit_mle(s).params
        moved = fit_mle(s.affine(k, c)).params
        assert moved.delta == pytest.approx(base.delta, rel=1e-4)
        assert moved.beta == pytest.approx(k * base.beta, rel=1e-4)
        assert moved.gamma == pytest.approx(k * base.gamma + c, rel=1e-4, abs=1e-4 * k * base.beta)

    def test_rejects_small_and_degenerate(self):
        """Test the sample checks."""
        with pytest.raises(SampleError, match="n > 2 required"):
            fit_mle(Sample.of([1.0, 2.0]))
        with pytest.raises(SampleError):
            fit_mle(Sample.of([3.0, 3.0, 3.0, 3.0]))
