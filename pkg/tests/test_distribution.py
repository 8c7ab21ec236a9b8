"""Tests for the reflected Weibull distribution functions."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as gamma_fn
from scipy.stats import kstest

from rwfit.distribution import (
    RwParams,
    Sample,
    cdf,
    central_moments,
    expected_max,
    logpdf,
    moment_gm,
    pdf,
    quantile,
    raw_moment,
    raw_moments,
    sample,
)
from rwfit.errors import DomainError, SampleError

SHAPES = [0.5, 1.0, 2.0, 5.0]


class TestRwParams:
    """Tests for parameter validation."""

    def test_rejects_nonpositive_shape_and_scale(self):
        """Test that delta and beta must be positive."""
        with pytest.raises(DomainError):
            RwParams(0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            RwParams(1.0, -1.0, 0.0)

    def test_rejects_nonfinite_location(self):
        """Test that gamma must be finite."""
        with pytest.raises(DomainError):
            RwParams(1.0, 1.0, math.inf)

    def test_affine(self):
        """Test parameters of k*X + c."""
        assert RwParams(2.0, 3.0, 1.0).affine(2.0, 5.0) == RwParams(2.0, 6.0, 7.0)


class TestSample:
    """Tests for Sample."""

    def test_values_sorted(self):
        """Test that values are stored ascending."""
        s = Sample.of([3.0, -1.0, 2.0])
        assert list(s.values) == [-1.0, 2.0, 3.0]
        assert s.n == 3 and s.minimum == -1.0 and s.maximum == 3.0

    def test_require_estimable(self):
        """Test the n > 2 and distinct-values checks."""
        with pytest.raises(SampleError, match="n > 2 required"):
            Sample.of([1.0, 2.0]).require_estimable()
        with pytest.raises(SampleError, match="degenerate"):
            Sample.of([1.0, 1.0, 1.0]).require_estimable()

    def test_rejects_nonfinite(self):
        """Test that NaN values are refused."""
        with pytest.raises(SampleError):
            Sample.of([1.0, float("nan")])


class TestDensityAndCdf:
    """Tests for pdf, cdf and quantile."""

    def test_exponential_case(self):
        """Test delta = 1 against the reflected exponential."""
        p = RwParams(1.0, 2.0, 0.0)
        assert pdf(-2.0, p) == pytest.approx(0.5 * math.exp(-1.0), rel=1e-14)
        assert cdf(-2.0, p) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_outside_support(self):
        """Test that the density vanishes and the CDF is 1 at and above gamma."""
        p = RwParams(2.0, 1.0, 0.0)
        assert pdf(0.0, p) == 0.0
        assert pdf(1.0, p) == 0.0
        assert cdf(1.0, p) == 1.0
        assert logpdf(0.5, p) == -math.inf

    @pytest.mark.parametrize("delta", SHAPES)
    def test_pdf_is_cdf_derivative(self, delta):
        """Test pdf against central differences of the cdf on 100 points of (gamma - 5 beta, gamma)."""
        p = RwParams(delta, 10.0, 0.0)
        h = 1e-6 * p.beta
        for x in np.linspace(p.gamma - 5.0 * p.beta, p.gamma, 102)[1:-1]:
            numeric = (cdf(x + h, p) - cdf(x - h, p)) / (2.0 * h)
            assert pdf(x, p) == pytest.approx(numeric, rel=1e-6, abs=1e-10)

    @pytest.mark.parametrize("delta", SHAPES)
    def test_quantile_round_trip(self, delta):
        """Test cdf(quantile(u)) = u."""
        p = RwParams(delta, 10.0, 0.0)
        u = np.linspace(0.01, 0.99, 99)
        np.testing.assert_allclose(cdf(quantile(u, p), p), u, rtol=1e-10)

    def test_quantile_domain(self):
        """Test that u outside (0, 1) is rejected."""
        p = RwParams(1.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            quantile(0.0, p)
        with pytest.raises(DomainError):
            quantile(np.array([0.5, 1.0]), p)

    def test_array_shapes_preserved(self):
        """Test that array input gives array output of the same shape."""
        p = RwParams(2.0, 1.0, 0.0)
        x = np.array([[-1.0, -0.5], [-0.1, 0.5]])
        assert pdf(x, p).shape == (2, 2)
        assert cdf(x, p).shape == (2, 2)
        assert isinstance(cdf(-1.0, p), float)


class TestSampler:
    """Tests for the inversion sampler."""

    def test_deterministic(self):
        """Test that the same seed reproduces the draw bit for bit."""
        p = RwParams(2.0, 10.0, 0.0)
        a = sample(50, p, seed=7)
        b = sample(50, p, seed=7)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, sample(50, p, seed=8).values)

    def test_values_below_gamma(self):
        """Test that every draw lies strictly below gamma, even for tiny beta."""
        p = RwParams(0.3, 1e-12, 5.0)
        assert np.all(sample(1000, p, seed=1).values < 5.0)

    @pytest.mark.parametrize("delta", SHAPES)
    def test_ks_against_cdf(self, delta):
        """Test sampled values against the CDF with a one-sample KS test."""
        p = RwParams(delta, 10.0, 0.0)
        draw = sample(100_000, p, seed=2024)
        result = kstest(draw.values, lambda x: cdf(x, p))
        assert result.pvalue > 0.01

    def test_rejects_empty(self):
        """Test that n must be positive."""
        with pytest.raises(DomainError):
            sample(0, RwParams(1.0, 1.0, 0.0), seed=1)


class TestMoments:
    """Tests for moment formulas."""

    def test_moment_gm(self):
        """Test E[(gamma - X)^k] = beta^k Gamma(k/delta + 1)."""
        p = RwParams(2.0, 3.0, 1.0)
        assert moment_gm(2, p) == pytest.approx(9.0 * gamma_fn(2.0), rel=1e-12)

    def test_raw_moments_match_binomial(self):
        """Test raw_moments against the binomial expansion on random triples."""
        rng = np.random.default_rng(11)
        for _ in range(20):
            p = RwParams(rng.uniform(0.3, 6.0), rng.uniform(0.5, 20.0), rng.uniform(-10.0, 10.0))
            expected = raw_moments(p)
            for j in (1, 2, 3):
                assert raw_moment(j, p) == pytest.approx(expected[j - 1], rel=1e-10, abs=1e-10)

    def test_central_moments_consistent(self):
        """Test central moments against the raw-moment identities."""
        p = RwParams(1.7, 4.0, 2.0)
        m1, m2, m3 = raw_moments(p)
        mean, variance, third = central_moments(p)
        assert mean == pytest.approx(m1, rel=1e-12)
        assert variance == pytest.approx(m2 - m1 ** 2, rel=1e-9)
        assert third == pytest.approx(m3 - 3 * m1 * m2 + 2 * m1 ** 3, rel=1e-7, abs=1e-9)

    def test_exponential_skewness_sign(self):
        """Test that the reflected exponential is left-skewed."""
        assert central_moments(RwParams(1.0, 1.0, 0.0))[2] == pytest.approx(-2.0, rel=1e-12)

    def test_monte_carlo_moments(self):
        """Test mean and second moment against 10^6 draws."""
        p = RwParams(2.0, 10.0, 0.0)
        x = sample(1_000_000, p, seed=99).values
        m1, m2, _ = raw_moments(p)
        se1 = x.std() / math.sqrt(x.size)
        se2 = (x ** 2).std() / math.sqrt(x.size)
        assert abs(x.mean() - m1) < 4 * se1
        assert abs((x ** 2).mean() - m2) < 4 * se2

    def test_expected_max_exponential(self):
        """Test E[X(n)] = gamma - beta/n for delta = 1."""
        p = RwParams(1.0, 6.0, 2.0)
        assert expected_max(3, p) == pytest.approx(0.0, abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(
        delta=st.floats(0.3, 8.0),
        k=st.floats(0.1, 50.0),
        c=st.floats(-100.0, 100.0),
        u=st.floats(0.01, 0.99),
    )
    def test_quantile_affine(self, delta, k, c, u):
        """Test that quantiles transform with the parameters."""
        p = RwParams(delta, 2.0, 1.0)
        assert quantile(u, p.affine(k, c)) == pytest.approx(k * quantile(u, p) + c, rel=1e-9, abs=1e-9)


class TestWorkedExamples:
    """Hand-checkable values of the distribution functions."""

    def test_density_and_cdf_values(self):
        """Test pdf and cdf at simple points."""
        assert pdf(-1.0, RwParams(1.0, 1.0, 0.0)) == pytest.approx(math.exp(-1.0), rel=1e-14)
        assert pdf(-1.0, RwParams(2.0, 1.0, 0.0)) == pytest.approx(2.0 * math.exp(-1.0), rel=1e-14)
        assert cdf(-math.log(2.0), RwParams(1.0, 1.0, 0.0)) == pytest.approx(0.5, rel=1e-14)

    def test_quantile_values(self):
        """Test closed-form quantiles."""
        assert quantile(math.exp(-1.0), RwParams(1.0, 1.0, 0.0)) == pytest.approx(-1.0, rel=1e-14)
        assert quantile(0.5, RwParams(1.0, 1.0, 0.0)) == pytest.approx(-math.log(2.0), rel=1e-14)
        assert quantile(0.5, RwParams(2.0, 10.0, 5.0)) == pytest.approx(5.0 - 10.0 * math.sqrt(math.log(2.0)), rel=1e-13)

    def test_moment_values(self):
        """Test moments of the reflected exponential and delta = 2."""
        assert moment_gm(1, RwParams(1.0, 2.0, 0.0)) == pytest.approx(2.0, rel=1e-14)
        assert moment_gm(2, RwParams(1.0, 1.0, 0.0)) == pytest.approx(2.0, rel=1e-14)
        assert moment_gm(3, RwParams(2.0, 1.0, 0.0)) == pytest.approx(gamma_fn(2.5), rel=1e-13)
        np.testing.assert_allclose(raw_moments(RwParams(1.0, 1.0, 0.0)), (-1.0, 2.0, -6.0), rtol=1e-13)
        assert raw_moments(RwParams(2.0, 1.0, 0.0))[0] == pytest.approx(-gamma_fn(1.5), rel=1e-14)

    def test_first_moment_identity(self):
        """Test moment_gm(1) = gamma - E[X]."""
        p = RwParams(0.7, 3.0, -4.0)
        assert moment_gm(1, p) == pytest.approx(p.gamma - raw_moments(p)[0], rel=1e-12)

    def test_expected_max_values(self):
        """Test E[X(n)] for one draw and for the exponential."""
        p = RwParams(2.5, 4.0, 1.0)
        assert expected_max(1, p) == pytest.approx(raw_moments(p)[0], rel=1e-12)
        assert expected_max(10, RwParams(1.0, 1.0, 0.0)) == pytest.approx(-0.1, rel=1e-13)
        assert expected_max(20, RwParams(2.0, 10.0, 0.0)) == pytest.approx(-10.0 * gamma_fn(1.5) / math.sqrt(20.0), rel=1e-12)

    def test_expected_max_monte_carlo(self):
        """Test E[X(n)] against the mean maximum of 10^5 samples of size 20."""
        p = RwParams(2.0, 10.0, 0.0)
        u = np.random.default_rng(5).uniform(size=(100_000, 20))
        maxima = quantile(u, p).max(axis=1)
        se = maxima.std() / math.sqrt(maxima.size)
        assert abs(maxima.mean() - expected_max(20, p)) < 4 * se
