import json
import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
from scipy.special import log_expit, logit

from sparse_ddm.errors import ConfigError, DimensionError
from sparse_ddm.types.model_config import ModelConfig


def _frozen(values, name: str) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DDMParams:
    """The fitted data-dependent measure.

    Coordinate i is distributed as ``phi[i] * N(mu[i], tau2) + (1 - phi[i]) * delta_0``
    independently of the others. ``logit_phi`` is stored alongside ``phi`` so that
    log-weights stay accurate where ``phi`` has saturated to 0 or 1.

    Instances are immutable: the arrays are flagged read-only and may be shared
    between threads and processes.

    Args:
        mu (np.ndarray): slab centres, one per coordinate.
        phi (np.ndarray): slab weights in [0, 1].
        logit_phi (np.ndarray): logit of the slab weights (may be +-inf).
        tau2 (float): shared slab variance.
        lambda_n (float): prior inclusion probability.
        config (ModelConfig): configuration the measure was built from.
    """

    mu: np.ndarray
    phi: np.ndarray
    logit_phi: np.ndarray
    tau2: float
    lambda_n: float
    config: ModelConfig

    def __post_init__(self):
        object.__setattr__(self, "mu", _frozen(self.mu, "mu"))
        object.__setattr__(self, "phi", _frozen(self.phi, "phi"))
        object.__setattr__(self, "logit_phi", _frozen(self.logit_phi, "logit_phi"))

        n = self.config.n
        for name in ("mu", "phi", "logit_phi"):
            if getattr(self, name).shape[0] != n:
                raise DimensionError(
                    f"{name} has length {getattr(self, name).shape[0]}, config.n is {n}"
                )
        if np.any(self.phi < 0) or np.any(self.phi > 1) or np.any(np.isnan(self.phi)):
            raise ConfigError("phi must lie in [0, 1]")
        if self.tau2 != self.config.tau2:
            raise ConfigError(
                f"tau2 {self.tau2} does not equal sigma^2/(alpha+gamma) = {self.config.tau2}"
            )

    @classmethod
    def from_weights(cls, mu, phi, config: ModelConfig) -> "DDMParams":
        """Builds a measure from explicit slab centres and weights.

        ``tau2`` and ``lambda_n`` are still derived from ``config``.

        Example:
            >>> config = ModelConfig(n=2, alpha=0.49, gamma=0.51)
            >>> params = DDMParams.from_weights([0.0, 3.0], [1.0, 0.5], config)
            >>> params.tau2
            1.0
        """
        from sparse_ddm.ddm_core import prior_inclusion

        phi = np.asarray(phi, dtype=np.float64)
        with np.errstate(divide="ignore"):
            logits = logit(phi)
        return cls(
            mu=mu,
            phi=phi,
            logit_phi=logits,
            tau2=config.tau2,
            lambda_n=prior_inclusion(config.n, config.a),
            config=config,
        )

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def tau(self) -> float:
        return math.sqrt(self.tau2)

    @property
    def log_phi(self) -> np.ndarray:
        """log(phi), computed from the logits."""
        return log_expit(self.logit_phi)

    @property
    def log_one_minus_phi(self) -> np.ndarray:
        """log(1 - phi), computed from the logits."""
        return log_expit(-self.logit_phi)

    @property
    def record(self) -> Dict[str, Any]:
        """Returns the measure as a JSON-ready dictionary

        Returns:
            Dict[str, Any]: ``{n, sigma, alpha, gamma, a, T, rng_seed, tau2, lambda_n, mu, phi}``
        """
        return {
            **self.config.options,
            "tau2": self.tau2,
            "lambda_n": self.lambda_n,
            "mu": self.mu.tolist(),
            "phi": self.phi.tolist(),
        }

    def __repr__(self) -> str:
        return (
            f"DDMParams(n={self.n}, tau2={self.tau2}, lambda_n={self.lambda_n}, "
            f"expected_dim={float(np.sum(self.phi))})"
        )

    def __str__(self) -> str:
        return json.dumps(self.record, indent=2)
