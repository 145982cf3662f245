import math

import numpy as np
import pytest

from sparse_ddm.errors import ConfigError
from sparse_ddm.laws.error_law import ErrorSpec
from sparse_ddm.sim.harness import gen_data
from sparse_ddm.types.experiment import TruthSpec

LAWS = ("gaussian", "uniform", "rademacher")


@pytest.mark.parametrize("law", LAWS)
def test_proxy_dominates_standard_deviation(law):
    errors = ErrorSpec(law, 1.7)
    assert errors.variance_proxy >= math.sqrt(errors.variance) - 1e-12


@pytest.mark.parametrize("law", LAWS)
def test_sample_moments(law):
    errors = ErrorSpec(law, 2.0)
    m = 200_000
    z = errors.sample(np.random.default_rng(0), m)
    assert z.dtype == np.float64
    assert abs(z.mean()) <= 4 * math.sqrt(errors.variance / m)
    assert z.var() == pytest.approx(errors.variance, rel=0.02)


@pytest.mark.parametrize("law", LAWS)
@pytest.mark.parametrize("t", [1.0, 2.0, 3.0])
def test_tail_frequency_below_bound(law, t):
    errors = ErrorSpec(law, 1.0)
    z = errors.sample(np.random.default_rng(1), 10**6)
    assert np.mean(np.abs(z) > t) <= errors.tail_bound(t)


def test_rademacher_values():
    z = ErrorSpec("rademacher", 0.5).sample(np.random.default_rng(2), 1000)
    assert set(np.unique(z)) == {-0.5, 0.5}


def test_mgf_window():
    assert ErrorSpec("gaussian").mgf_window == 0.5
    assert ErrorSpec("uniform").mgf_window == 0.25


@pytest.mark.parametrize(
    "law, scale",
    [
        ("cauchy", 1.0),
        ("gaussian", -1.0),
        ("uniform", math.inf),
        ("gaussian", "x"),
        ("rademacher", None),
    ],
)
def test_rejects(law, scale):
    with pytest.raises(ConfigError):
        ErrorSpec(law, scale)


def test_options_round_trip():
    errors = ErrorSpec("uniform", 3.0)
    assert ErrorSpec.from_options(errors.options) == errors


@pytest.mark.parametrize("law", LAWS)
def test_zero_scale_reproduces_truth(law):
    truth = TruthSpec(n=20, pattern="coverage_study", theta11=4.0)
    y = gen_data(truth, ErrorSpec(law, 0.0), seed=3)
    np.testing.assert_array_equal(y, truth.theta_star())


def test_gen_data_is_seeded():
    truth = TruthSpec(n=50, pattern="sparse_random", s=3, magnitude=5.0)
    errors = ErrorSpec()
    np.testing.assert_array_equal(gen_data(truth, errors, 7), gen_data(truth, errors, 7))
    assert not np.array_equal(gen_data(truth, errors, 7), gen_data(truth, errors, 8))
