"""Tests for the closed-form analytics and the degree sampler.

The independent oracle throughout is adaptive numerical quadrature of the
raw integrand k**(-alpha): the normalization, mean and second moment are
rebuilt from integrals and compared against the closed forms.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from ffparadox.errors import DegenerateSupportError, DivergentError
from ffparadox.powerlaw import (
    INFINITE,
    Branch,
    PowerLawSpec,
    cdf,
    normalization_constant,
    pdf,
    predict,
    sample_continuous,
    sample_degrees,
    _moments_at_alpha2,
    _moments_at_alpha3,
    _moments_general,
)

E = math.e


def quad_moments(alpha, k_min, k_max):
    """(C, mean, second moment) by quadrature of the unnormalized density."""
    z = quad(lambda k: k**-alpha, k_min, k_max, epsabs=0, epsrel=1e-12)[0]
    m1 = quad(lambda k: k ** (1 - alpha), k_min, k_max, epsabs=0, epsrel=1e-12)[0] / z
    m2 = quad(lambda k: k ** (2 - alpha), k_min, k_max, epsabs=0, epsrel=1e-12)[0] / z
    return 1.0 / z, m1, m2


class TestSpecValidation:
    def test_alpha_at_most_one_rejected(self):
        with pytest.raises(ValueError):
            PowerLawSpec(1.0, 1.0, 10.0)
        with pytest.raises(ValueError):
            PowerLawSpec(0.5, 1.0, 10.0)

    def test_k_min_below_one_rejected(self):
        with pytest.raises(ValueError):
            PowerLawSpec(2.0, 0.5, 10.0)

    def test_k_max_below_k_min_rejected(self):
        with pytest.raises(ValueError):
            PowerLawSpec(2.0, 5.0, 2.0)

    def test_degenerate_allowed(self):
        spec = PowerLawSpec(2.0, 5.0, 5.0)
        assert spec.is_degenerate


class TestNormalizationConstant:
    def test_alpha2_unbounded(self):
        assert normalization_constant(PowerLawSpec(2.0, 1.0, INFINITE)) == pytest.approx(1.0)

    def test_alpha3_unbounded(self):
        assert normalization_constant(PowerLawSpec(3.0, 1.0, INFINITE)) == pytest.approx(2.0)

    def test_truncated_matches_quadrature(self):
        c, _, _ = quad_moments(2.5, 1.0, 100.0)
        got = normalization_constant(PowerLawSpec(2.5, 1.0, 100.0))
        assert got == pytest.approx(c, rel=1e-10)

    def test_degenerate_errors(self):
        with pytest.raises(DegenerateSupportError):
            normalization_constant(PowerLawSpec(2.0, 3.0, 3.0))


class TestPdfCdf:
    def test_pdf_at_support_start(self):
        assert pdf(PowerLawSpec(2.0, 1.0, INFINITE), 1.0) == pytest.approx(1.0)

    def test_pdf_alpha2_at_two(self):
        assert pdf(PowerLawSpec(2.0, 1.0, INFINITE), 2.0) == pytest.approx(0.25)

    def test_pdf_matches_quadrature_constant(self):
        c, _, _ = quad_moments(2.5, 2.0, 50.0)
        got = pdf(PowerLawSpec(2.5, 2.0, 50.0), 10.0)
        assert got == pytest.approx(c * 10.0**-2.5, rel=1e-10)

    def test_pdf_zero_outside_support(self):
        spec = PowerLawSpec(2.5, 2.0, 50.0)
        assert pdf(spec, 1.0) == 0.0
        assert pdf(spec, 51.0) == 0.0

    def test_pdf_integrates_to_one(self):
        for spec in (
            PowerLawSpec(1.5, 1.0, 10.0),
            PowerLawSpec(2.0, 1.0, 1000.0),
            PowerLawSpec(3.0, 2.0, 50.0),
        ):
            total = quad(
                lambda k: pdf(spec, k), spec.k_min, spec.k_max, epsabs=0, epsrel=1e-12
            )[0]
            assert total == pytest.approx(1.0, abs=1e-10)

    def test_cdf_boundaries(self):
        spec = PowerLawSpec(2.2, 1.0, 50.0)
        assert cdf(spec, spec.k_min) == 0.0
        assert cdf(spec, spec.k_max) == pytest.approx(1.0)

    def test_cdf_matches_quadrature(self):
        spec = PowerLawSpec(2.0, 1.0, 100.0)
        want = quad(lambda k: pdf(spec, k), 1.0, 10.0, epsabs=0, epsrel=1e-12)[0]
        assert cdf(spec, 10.0) == pytest.approx(want, rel=1e-10)

    def test_cdf_vectorized_monotone(self):
        spec = PowerLawSpec(2.0, 1.0, 100.0)
        ks = np.linspace(1.0, 100.0, 200)
        values = cdf(spec, ks)
        assert (np.diff(values) >= 0).all()


class TestPredict:
    def test_matches_quadrature_on_grid(self):
        for alpha in (1.1, 1.5, 2.5, 3.5):
            for k_min in (1.0, 2.0):
                for k_max in (10.0, 100.0, 1000.0):
                    c, m1, m2 = quad_moments(alpha, k_min, k_max)
                    r = predict(PowerLawSpec(alpha, k_min, k_max))
                    var = m2 - m1 * m1
                    assert r.c == pytest.approx(c, rel=1e-8)
                    assert r.mean_k == pytest.approx(m1, rel=1e-8)
                    assert r.second_moment == pytest.approx(m2, rel=1e-8)
                    assert r.variance == pytest.approx(var, rel=1e-8)
                    assert r.var_to_mean == pytest.approx(var / m1, rel=1e-8)
                    assert r.k_ff == pytest.approx(m2 / m1, rel=1e-8)
                    assert r.branch is Branch.GENERAL

    def test_alpha2_limit_against_direct_expressions(self):
        # mean -> k_min*k_max*ln(k_max/k_min)/(k_max-k_min), k_ff -> (k_max-k_min)/ln(...)
        r = predict(PowerLawSpec(2.0, 1.0, E))
        assert r.branch is Branch.LIMIT_ALPHA_2
        assert r.mean_k == pytest.approx(E / (E - 1.0), rel=1e-12)
        assert r.k_ff == pytest.approx(E - 1.0, rel=1e-12)

    def test_alpha2_limit_against_nearby_quadrature(self):
        r = predict(PowerLawSpec(2.0, 1.0, E))
        for alpha in (2.0 - 1e-7, 2.0 + 1e-7):
            _, m1, m2 = quad_moments(alpha, 1.0, E)
            assert r.mean_k == pytest.approx(m1, rel=1e-5)
            assert r.k_ff == pytest.approx(m2 / m1, rel=1e-5)

    def test_alpha3_mean_is_harmonic_mean(self):
        for k_min, k_max in ((1.0, 100.0), (2.0, 37.5), (1.5, 8.0)):
            r = predict(PowerLawSpec(3.0, k_min, k_max))
            assert r.branch is Branch.LIMIT_ALPHA_3
            assert r.mean_k == pytest.approx(
                2.0 * k_min * k_max / (k_min + k_max), rel=1e-12
            )

    def test_alpha3_kff_direct_expression(self):
        k_min, k_max = 1.0, 100.0
        r = predict(PowerLawSpec(3.0, k_min, k_max))
        want = k_min * k_max * math.log(k_max / k_min) / (k_max - k_min)
        assert r.k_ff == pytest.approx(want, rel=1e-12)

    def test_degenerate_point_mass(self):
        r = predict(PowerLawSpec(2.7, 5.0, 5.0))
        assert r.branch is Branch.DEGENERATE
        assert r.mean_k == 5.0
        assert r.variance == 0.0
        assert r.k_ff == 5.0
        assert math.isnan(r.c)

    def test_unbounded_requires_alpha_above_three(self):
        with pytest.raises(DivergentError):
            predict(PowerLawSpec(2.5, 1.0, INFINITE))
        with pytest.raises(DivergentError):
            predict(PowerLawSpec(3.0, 1.0, INFINITE))

    def test_unbounded_alpha4(self):
        _, m1, m2 = quad_moments(4.0, 1.0, np.inf)
        r = predict(PowerLawSpec(4.0, 1.0, INFINITE))
        assert r.mean_k == pytest.approx(m1, rel=1e-8)
        assert r.k_ff == pytest.approx(m2 / m1, rel=1e-8)

    def test_eq6_identity_exact(self):
        # k_ff - mean == var_to_mean and var_to_mean == variance / mean,
        # bit-for-bit as fields are derived.
        rng = np.random.default_rng(5)
        for _ in range(200):
            alpha = float(rng.uniform(1.05, 5.5))
            k_min = float(rng.uniform(1.0, 5.0))
            k_max = k_min * float(rng.uniform(1.5, 1e4))
            r = predict(PowerLawSpec(alpha, k_min, k_max))
            assert r.k_ff - r.mean_k == pytest.approx(r.var_to_mean, rel=1e-12)
            assert r.var_to_mean == r.variance / r.mean_k
            assert r.k_ff >= r.mean_k


class TestSingularityContinuity:
    def test_general_vs_limit_near_alpha2(self):
        for k_max in (10.0, 1000.0):
            lim_mean, lim_m2 = _moments_at_alpha2(1.0, k_max)
            for alpha in (2.0 - 1e-6, 2.0 + 1e-6):
                gen_mean, gen_m2 = _moments_general(alpha, 1.0, k_max)
                assert abs(gen_mean - lim_mean) / lim_mean <= 1e-4
                assert abs(gen_m2 - lim_m2) / lim_m2 <= 1e-4

    def test_general_vs_limit_near_alpha3(self):
        for k_max in (10.0, 1000.0):
            lim_mean, lim_m2 = _moments_at_alpha3(1.0, k_max)
            for alpha in (3.0 - 1e-6, 3.0 + 1e-6):
                gen_mean, gen_m2 = _moments_general(alpha, 1.0, k_max)
                assert abs(gen_mean - lim_mean) / lim_mean <= 1e-4
                assert abs(gen_m2 - lim_m2) / lim_m2 <= 1e-4

    def test_predict_continuous_across_switch(self):
        for pivot in (2.0, 3.0):
            inside = predict(PowerLawSpec(pivot, 1.0, 500.0))
            for side in (-2e-6, 2e-6):
                outside = predict(PowerLawSpec(pivot + side, 1.0, 500.0))
                for field in ("mean_k", "second_moment", "var_to_mean", "k_ff"):
                    a = getattr(inside, field)
                    b = getattr(outside, field)
                    assert abs(a - b) / abs(a) <= 1e-4


class TestCrossFormulaIdentity:
    def test_kff_at_three_equals_mean_at_two(self):
        # Both reduce to k_min*k_max*ln(k_max/k_min)/(k_max-k_min).
        rng = np.random.default_rng(17)
        for _ in range(20):
            k_min = float(rng.uniform(1.0, 10.0))
            k_max = k_min * float(rng.uniform(1.5, 1e4))
            kff3 = predict(PowerLawSpec(3.0, k_min, k_max)).k_ff
            mean2 = predict(PowerLawSpec(2.0, k_min, k_max)).mean_k
            assert abs(kff3 - mean2) / mean2 <= 1e-12


class TestMonotonicity:
    def test_increasing_in_kmax(self):
        kmaxs = [10.0, 31.6, 100.0, 316.0, 1000.0, 3162.0, 10000.0]
        for alpha in (1.2, 1.6, 2.0, 2.4, 2.8):
            values = [
                predict(PowerLawSpec(alpha, 1.0, k)).var_to_mean for k in kmaxs
            ]
            assert all(b > a for a, b in zip(values, values[1:]))

    def test_decreasing_in_alpha(self):
        alphas = [1.2, 1.5, 1.8, 2.0, 2.3, 2.6, 3.0]
        for k_max in (10.0, 100.0, 10000.0):
            values = [
                predict(PowerLawSpec(a, 1.0, k_max)).var_to_mean for a in alphas
            ]
            assert all(b < a for a, b in zip(values, values[1:]))


class TestSampling:
    def test_empty_sample(self):
        assert sample_degrees(PowerLawSpec(2.0, 1.0, 100.0), 0, 1).size == 0

    def test_deterministic(self):
        spec = PowerLawSpec(2.0, 1.0, 1000.0)
        a = sample_degrees(spec, 5000, 123)
        b = sample_degrees(spec, 5000, 123)
        assert (a == b).all()
        c = sample_degrees(spec, 5000, 124)
        assert (a != c).any()

    def test_values_within_rounded_support(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            k_min = float(rng.uniform(1.0, 4.0))
            k_max = k_min * float(rng.uniform(2.0, 500.0))
            alpha = float(rng.uniform(1.1, 4.0))
            spec = PowerLawSpec(alpha, k_min, k_max)
            values = sample_degrees(spec, 500, int(rng.integers(1 << 30)))
            assert values.min() >= math.floor(k_min + 0.5)
            assert values.max() <= math.floor(k_max + 0.5)

    def test_rounding_is_half_up(self):
        spec = PowerLawSpec(2.0, 1.0, 100.0)
        cont = sample_continuous(spec, 2000, 9)
        ints = sample_degrees(spec, 2000, 9)
        assert (ints == np.floor(cont + 0.5)).all()

    def test_ks_distance_small(self):
        spec = PowerLawSpec(2.0, 1.0, 1000.0)
        values = np.sort(sample_continuous(spec, 100000, 7))
        model = cdf(spec, values)
        n = values.size
        steps = np.arange(1, n + 1) / n
        ks = np.maximum(np.abs(steps - model), np.abs(steps - 1.0 / n - model)).max()
        assert ks < 0.02

    def test_unbounded_continuous_sampling(self):
        values = sample_continuous(PowerLawSpec(2.5, 1.0, INFINITE), 10000, 21)
        assert values.min() >= 1.0
        assert np.isfinite(values).all()

    def test_integer_sampling_requires_finite_kmax(self):
        with pytest.raises(DivergentError):
            sample_degrees(PowerLawSpec(4.0, 1.0, INFINITE), 10, 0)

    def test_degenerate_sampling_is_constant(self):
        values = sample_degrees(PowerLawSpec(2.0, 5.0, 5.0), 50, 3)
        assert (values == 5).all()
