import numpy as np
import pytest

from sparse_ddm.types.ddm_params import DDMParams
from sparse_ddm.types.model_config import ModelConfig


def unit_tau_config(n: int) -> ModelConfig:
    """A config whose slab variance is exactly 1 (alpha + gamma = 1, sigma = 1)."""
    return ModelConfig(n=n, sigma=1.0, alpha=0.49, gamma=0.51)


def measure(mu, phi) -> DDMParams:
    """A measure with explicit centres and weights and tau = 1."""
    mu = np.atleast_1d(np.asarray(mu, dtype=np.float64))
    phi = np.broadcast_to(np.asarray(phi, dtype=np.float64), mu.shape)
    return DDMParams.from_weights(mu, phi, unit_tau_config(mu.shape[0]))


@pytest.fixture
def reference_config():
    """n = 100, sigma = 1, alpha = 0.5, gamma = 1, a = 1, with Gaussian T = 1/2."""
    return ModelConfig(n=100, sigma=1.0, alpha=0.5, gamma=1.0, a=1.0, T=0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
