"""Tests for method-of-moments estimation."""
import math

import numpy as np
import pytest
from scipy.optimize import bisect

from rwfit.config import MmeConfig
from rwfit.distribution import RwParams, Sample, raw_moments, sample
from rwfit.errors import DomainError, NoSolutionError, SampleError
from rwfit.estimation import Method, fit_mme, fit_mme_from_moments, sample_moments, shape_equation


class TestSampleMoments:
    """Tests for sample_moments."""

    def test_two_symmetric_points(self):
        """Test {-1, -3}."""
        m = sample_moments(Sample.of([-1.0, -3.0]))
        assert (m.m1, m.m2, m.m3, m.central2, m.central3) == (-2.0, 5.0, -14.0, 1.0, 0.0)

    def test_single_zero(self):
        """Test {0}."""
        m = sample_moments(Sample.of([0.0]))
        assert (m.m1, m.m2, m.m3, m.central2, m.central3) == (0.0, 0.0, 0.0, 0.0, 0.0)

    def test_two_pass_oracle(self):
        """Test central moments against a direct loop on 30 random samples."""
        rng = np.random.default_rng(8)
        for _ in range(30):
            x = rng.normal(rng.uniform(-50, 50), rng.uniform(0.1, 20), size=int(rng.integers(3, 60)))
            m = sample_moments(Sample.of(x))
            mean = sum(x) / len(x)
            c2 = sum((v - mean) ** 2 for v in x) / len(x)
            c3 = sum((v - mean) ** 3 for v in x) / len(x)
            assert m.central2 == pytest.approx(c2, rel=1e-10)
            assert m.central3 == pytest.approx(c3, rel=1e-10, abs=1e-10 * c2 ** 1.5)
            assert m.m2 == pytest.approx(c2 + mean ** 2, rel=1e-10)

    def test_sheppard_correction(self):
        """Test that a class width lowers the variance by h^2/12 only."""
        s = Sample.of([5.0, 15.0, 15.0, 25.0, 35.0], bin_width=10.0)
        plain = sample_moments(s, sheppard=False)
        corrected = sample_moments(s, sheppard=True)
        assert corrected.central2 == pytest.approx(plain.central2 - 100.0 / 12.0, rel=1e-12)
        assert corrected.central3 == plain.central3
        assert corrected.m1 == plain.m1
        assert corrected.m2 == pytest.approx(corrected.central2 + corrected.m1 ** 2, rel=1e-12)

    def test_no_correction_without_width(self):
        """Test that raw samples are never corrected."""
        s = Sample.of([1.0, 2.0, 4.0])
        assert sample_moments(s, sheppard=True).central2 == sample_moments(s, sheppard=False).central2


class TestShapeEquation:
    """Tests for shape_equation."""

    def test_exponential(self):
        """Test the exponential skewness 2 at delta = 1."""
        assert shape_equation(1.0) == pytest.approx(2.0, rel=1e-12)

    def test_large_delta_limit(self):
        """Test the approach to the smallest-extreme-value skewness."""
        value = shape_equation(200.0)
        assert -1.1396 < value < -1.10

    def test_symmetric_point(self):
        """Test the zero of g near 3.602 by independent bisection."""
        root = bisect(shape_equation, 2.0, 5.0, xtol=1e-10)
        assert root == pytest.approx(3.602, abs=1e-3)

    def test_monotone_and_finite_over_bracket(self):
        """Test strict decrease and no overflow on [0.02, 500]."""
        values = np.array([shape_equation(d) for d in np.geomspace(0.02, 500.0, 200)])
        assert np.all(np.isfinite(values))
        assert np.all(np.diff(values) < 0)

    def test_domain(self):
        """Test that delta <= 0 is rejected."""
        with pytest.raises(DomainError):
            shape_equation(0.0)


class TestFitMme:
    """Tests for fit_mme and fit_mme_from_moments."""

    @pytest.mark.parametrize("truth", [(0.5, 1.0, 0.0), (1.0, 10.0, 0.0), (2.0, 10.0, 0.0), (5.0, 10.0, 5.0)])
    def test_population_round_trip(self, truth):
        """Test that population moments invert to the generating parameters."""
        p = RwParams(*truth)
        result = fit_mme_from_moments(*raw_moments(p))
        assert result.method == Method.MME
        assert result.log_likelihood is None
        assert result.converged
        assert result.params.delta == pytest.approx(p.delta, rel=1e-6)
        assert result.params.beta == pytest.approx(p.beta, rel=1e-6)
        assert result.params.gamma == pytest.approx(p.gamma, rel=1e-6, abs=1e-6)

    def test_moment_equations_reproduced(self):
        """Test that the fitted triple reproduces the sample's raw moments."""
        s = sample(80, RwParams(2.0, 10.0, 0.0), seed=4)
        result = fit_mme(s)
        m = sample_moments(s)
        for model, observed in zip(raw_moments(result.params), (m.m1, m.m2, m.m3)):
            assert model == pytest.approx(observed, rel=1e-6)

    def test_insurance_ages(self, insurance_sample):
        """Test the grouped insurance-age data with Sheppard's correction."""
        result = fit_mme(insurance_sample)
        assert 36.0 <= result.params.delta <= 44.0
        assert 280.0 <= result.params.beta <= 341.0
        assert 306.0 <= result.params.gamma <= 374.0
        assert "Sheppard" in result.notes

    def test_insurance_ages_plain_midpoints(self, insurance_sample):
        """Test that uncorrected midpoints give a much smaller shape."""
        result = fit_mme(insurance_sample, MmeConfig(sheppard_correction=False))
        assert result.params.delta < 30.0

    @pytest.mark.parametrize("k,c", [(2.5, -7.0), (0.01, 1000.0)])
    def test_affine_equivariance(self, k, c):
        """Test that fitting k*x + c gives (delta, k*beta, k*gamma + c)."""
        s = sample(60, RwParams(1.5, 10.0, 0.0), seed=17)
        base = fit_mme(s).params
        moved = fit_mme(s.affine(k, c)).params
        assert moved.delta == pytest.approx(base.delta, rel=1e-7)
        assert moved.beta == pytest.approx(k * base.beta, rel=1e-7)
        assert moved.gamma == pytest.approx(k * base.gamma + c, rel=1e-7, abs=1e-7 * k * base.beta)

    def test_skewness_out_of_range(self):
        """Test a right-skewed sample no reflected Weibull can match."""
        s = Sample.of([0.0] * 9 + [10.0])
        with pytest.raises(NoSolutionError, match="attainable range"):
            fit_mme(s)

    def test_nonpositive_variance_from_moments(self):
        """Test moments implying zero variance."""
        with pytest.raises(DomainError):
            fit_mme_from_moments(1.0, 1.0, 1.0)

    def test_small_sample(self):
        """Test n <= 2."""
        with pytest.raises(SampleError, match="n > 2 required"):
            fit_mme(Sample.of([1.0, 2.0]))

    def test_raw_sample_ignores_sheppard_setting(self):
        """Test that an absent class width leaves the fit unchanged."""
        s = sample(40, RwParams(2.0, 10.0, 0.0), seed=5)
        assert fit_mme(s).params == fit_mme(s, MmeConfig(sheppard_correction=False)).params
