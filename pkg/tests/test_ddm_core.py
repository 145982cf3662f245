import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparse_ddm.constants import SAMPLE_BLOCK_ROWS
from sparse_ddm.ddm_core import (
    fit,
    fit_logits,
    iter_sample_blocks,
    log_config_mass,
    marginal_cdf,
    marginal_quantile,
    marginal_quantiles,
    prior_inclusion,
    sample,
)
from sparse_ddm.errors import ConfigError, DimensionError, InputError
from sparse_ddm.types.ddm_params import DDMParams
from sparse_ddm.types.model_config import ModelConfig
from tests.conftest import measure

LOGIT0 = math.log(1e-4) - math.log1p(-1e-4) + 0.5 * math.log(1.0 / 1.5)


class TestPriorInclusion:
    def test_values(self):
        assert prior_inclusion(100, 1.0) == pytest.approx(1e-4)
        assert prior_inclusion(1, 1.0) == 1.0

    @given(n=st.integers(2, 10**9), a=st.floats(0.01, 5.0))
    def test_below_one_over_n(self, n, a):
        assert 0 < prior_inclusion(n, a) < 1 / n

    def test_rejects_empty_dimension(self):
        with pytest.raises(ConfigError):
            prior_inclusion(0, 1.0)

    def test_rejects_underflow(self):
        with pytest.raises(ConfigError, match="underflows"):
            prior_inclusion(10, 1000.0)
        assert prior_inclusion(10, 300.0) == pytest.approx(1e-301)


class TestFit:
    def test_known_weights(self, reference_config):
        y = np.zeros(100)
        y[0], y[1] = 8.0, 6.0
        params = fit(y, reference_config)

        assert params.logit_phi[2] == pytest.approx(LOGIT0, abs=1e-12)
        assert LOGIT0 == pytest.approx(-9.41297, abs=1e-4)
        assert params.phi[0] == pytest.approx(0.99862, abs=1e-5)
        assert params.phi[1] == pytest.approx(0.3982, abs=1e-4)
        assert params.phi[2] == pytest.approx(8.15e-5, rel=5e-3)
        assert params.tau2 == pytest.approx(2 / 3)
        assert params.lambda_n == pytest.approx(1e-4)

    def test_centres_are_the_data(self, reference_config, rng):
        y = rng.normal(0, 3, 100)
        params = fit(y, reference_config)
        np.testing.assert_array_equal(params.mu, y)
        assert params.tau2 == reference_config.tau2

    def test_weights_are_bit_identical_across_calls(self, reference_config, rng):
        y = rng.normal(0, 3, 100)
        first, second = fit(y, reference_config), fit(y, reference_config)
        np.testing.assert_array_equal(first.phi, second.phi)
        np.testing.assert_array_equal(first.logit_phi, second.logit_phi)

    def test_saturates_without_warnings(self):
        config = ModelConfig(n=10, a=300.0)
        y = np.zeros(10)
        y[0] = 1e6
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            params = fit(y, config)
        assert params.phi[0] == 1.0
        assert 0.0 < params.phi[1] < 1e-300
        assert params.log_one_minus_phi[1] == pytest.approx(0.0, abs=1e-300)
        assert np.isfinite(params.log_phi[1])

    def test_single_coordinate_is_always_a_slab(self):
        params = fit([0.0], ModelConfig(n=1))
        assert params.phi[0] == 1.0

    def test_weight_increases_with_magnitude(self, reference_config):
        y = np.linspace(0.0, 10.0, 1000)
        config = reference_config.replace(n=1000)
        logits = fit_logits(y, config)
        assert np.all(np.diff(logits) > 0)
        phi = fit(y, config).phi
        assert np.all(np.diff(phi) >= 0)
        assert np.all(np.diff(phi[y <= 6.0]) > 0)

    def test_weight_is_even_in_y(self, reference_config, rng):
        y = rng.normal(0, 4, 100)
        np.testing.assert_array_equal(fit(y, reference_config).phi, fit(-y, reference_config).phi)

    def test_length_mismatch(self, reference_config):
        with pytest.raises(DimensionError):
            fit(np.zeros(99), reference_config)

    def test_non_finite_data(self, reference_config):
        y = np.zeros(100)
        y[3] = np.nan
        with pytest.raises(InputError, match=r"y\[3\]"):
            fit(y, reference_config)

    def test_hypothesis_violation(self):
        with pytest.raises(ConfigError):
            ModelConfig(n=10, alpha=0.5, T=0.25)


class TestMarginalCdf:
    def test_jump_at_zero(self):
        params = measure([3.0], [0.5])
        assert marginal_cdf(params, 0, 0.0) == pytest.approx(0.500675, abs=1e-6)
        left = marginal_cdf(params, 0, -1e-12)
        assert 0.5 - 1e-9 < marginal_cdf(params, 0, 0.0) - left < 0.5 + 1e-9

    def test_limits(self):
        params = measure([3.0], [0.5])
        values = marginal_cdf(params, 0, np.array([-np.inf, -50.0, 50.0, np.inf]))
        np.testing.assert_allclose(values, [0.0, 0.0, 1.0, 1.0], atol=1e-15)

    def test_non_decreasing(self):
        params = measure([-1.0], [0.3])
        values = marginal_cdf(params, 0, np.linspace(-6, 6, 1001))
        assert np.all(np.diff(values) >= 0)

    def test_bad_index(self):
        with pytest.raises(DimensionError):
            marginal_cdf(measure([1.0], [0.5]), 1, 0.0)


class TestMarginalQuantile:
    def test_inside_the_jump(self):
        params = measure([10.0], [0.5])
        assert marginal_quantile(params, 0, 0.4) == 0.0
        assert marginal_quantile(params, 0, 0.025) == 0.0

    def test_upper_branch(self):
        params = measure([10.0], [0.5])
        assert marginal_quantile(params, 0, 0.975) == pytest.approx(11.6449, abs=1e-4)

    def test_pure_slab_and_pure_spike(self):
        slab = marginal_quantile(measure([0.0], [1.0]), 0, 0.975)
        assert slab == pytest.approx(1.959964, abs=1e-6)
        assert marginal_quantile(measure([5.0], [0.0]), 0, 0.999) == 0.0

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, np.nan])
    def test_rejects_probabilities_outside_the_open_unit_interval(self, p):
        with pytest.raises(ConfigError):
            marginal_quantile(measure([1.0], [0.5]), 0, p)

    @settings(max_examples=200, deadline=None)
    @given(
        phi=st.floats(0.0, 1.0),
        mu=st.floats(-20.0, 20.0),
        p=st.floats(1e-6, 1 - 1e-6),
    )
    def test_generalised_inverse(self, phi, mu, p):
        params = measure([mu], [phi])
        q = marginal_quantile(params, 0, p)
        assert marginal_cdf(params, 0, q) >= p - 1e-12
        assert marginal_cdf(params, 0, q - 1e-7) <= p + 1e-6

    def test_subnormal_weight_is_quiet(self):
        params = measure([5.0, -5.0], [5e-324, 5e-324])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            for p in (0.01, 0.5, 0.99):
                np.testing.assert_array_equal(marginal_quantiles(params, p), [0.0, 0.0])

    def test_vectorised_matches_scalar(self, rng):
        mu = rng.normal(0, 3, 20)
        phi = rng.uniform(0, 1, 20)
        params = measure(mu, phi)
        q = marginal_quantiles(params, 0.9)
        expected = [marginal_quantile(params, i, 0.9) for i in range(20)]
        np.testing.assert_array_equal(q, expected)


class TestSample:
    def test_spike_only_measure_draws_zeros(self):
        draws = sample(measure(np.arange(5.0), np.zeros(5)), 1000, seed=1)
        assert draws.shape == (1000, 5)
        assert not draws.any()

    def test_same_seed_same_draws(self, rng):
        params = measure(rng.normal(0, 2, 7), rng.uniform(0, 1, 7))
        np.testing.assert_array_equal(sample(params, 3000, 9), sample(params, 3000, 9))
        assert not np.array_equal(sample(params, 3000, 9), sample(params, 3000, 10))

    def test_prefix_stable_across_lengths(self, rng):
        params = measure(rng.normal(0, 2, 4), rng.uniform(0, 1, 4))
        short = sample(params, SAMPLE_BLOCK_ROWS, 5)
        longer = sample(params, 3 * SAMPLE_BLOCK_ROWS + 7, 5)
        np.testing.assert_array_equal(short, longer[:SAMPLE_BLOCK_ROWS])

    def test_blocks_concatenate_to_sample(self, rng):
        params = measure(rng.normal(0, 2, 3), rng.uniform(0, 1, 3))
        blocks = list(iter_sample_blocks(params, 2500, 3))
        assert [b.shape[0] for b in blocks] == [1024, 1024, 452]
        np.testing.assert_array_equal(np.concatenate(blocks), sample(params, 2500, 3))

    def test_rejects_empty_sample(self):
        with pytest.raises(ConfigError):
            sample(measure([0.0], [0.5]), 0, 0)

    @staticmethod
    def _check_moments(params: DDMParams, m: int, seed: int):
        draws = sample(params, m, seed)
        phi, mu, tau2 = params.phi, params.mu, params.tau2
        mean = phi * mu
        var = phi * (tau2 + mu**2) - mean**2

        sample_mean = draws.mean(axis=0)
        assert np.all(np.abs(sample_mean - mean) <= 4 * np.sqrt(var / m))

        centred = (draws - sample_mean) ** 2
        var_se = centred.std(axis=0) / np.sqrt(m)
        assert np.all(np.abs(centred.mean(axis=0) - var) <= 4 * var_se)

    def test_moments(self):
        params = measure([2.0], [0.5])
        self._check_moments(params, 100_000, 11)

    @pytest.mark.parametrize("instance", range(10))
    def test_moments_random_instances(self, instance):
        rng = np.random.default_rng([42, instance])
        n = int(rng.integers(1, 13))
        params = measure(rng.normal(0, 3, n), rng.uniform(0.05, 0.95, n))
        self._check_moments(params, 100_000, 1000 + instance)

    @pytest.mark.slow
    @pytest.mark.parametrize("instance", range(10, 50))
    def test_moments_more_random_instances(self, instance):
        self.test_moments_random_instances(instance)


class TestLogConfigMass:
    def test_value(self):
        params = measure([0.0, 0.0, 0.0], [0.9, 0.1, 0.5])
        expected = math.log(0.9) + math.log(0.9) + math.log(0.5)
        assert log_config_mass(params, {0}) == pytest.approx(expected)
        assert expected == pytest.approx(-0.9039, abs=1e-4)

    def test_impossible_configuration(self):
        params = measure([0.0, 5.0], [0.0, 1.0])
        assert log_config_mass(params, {0, 1}) == -math.inf
        assert log_config_mass(params, set()) == -math.inf
        assert log_config_mass(params, {1}) == 0.0

    def test_bad_index(self):
        with pytest.raises(DimensionError):
            log_config_mass(measure([0.0], [0.5]), {1})

    @pytest.mark.parametrize("n", [1, 5, 10, 12])
    def test_normalised(self, n, reference_config):
        rng = np.random.default_rng(n)
        config = reference_config.replace(n=n)
        params = fit(rng.normal(0, 4, n), config)
        masses = [
            math.exp(log_config_mass(params, itertools.compress(range(n), bits)))
            for bits in itertools.product((0, 1), repeat=n)
        ]
        assert math.fsum(masses) == pytest.approx(1.0, abs=1e-10)
