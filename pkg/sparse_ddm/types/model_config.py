import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict

from sparse_ddm.constants import (
    DEFAULT_A,
    DEFAULT_ALPHA,
    DEFAULT_GAMMA,
    DEFAULT_SEED,
    DEFAULT_T,
)
from sparse_ddm.errors import ConfigError

_MAX_SEED = 2**64 - 1
# lambda_n must stay a normal double
_MIN_LOG_PRIOR = math.log(sys.float_info.min)


@dataclass(frozen=True)
class ModelConfig:
    """ModelConfig holds every fixed knob of the data-dependent measure.

    Args:
        n (int): dimension of the mean vector.
        sigma (float, optional): variance proxy of the error law, in data units. Defaults to 1.0.
        alpha (float, optional): learning-rate fraction, must be below 2T. Defaults to 0.49.
        gamma (float, optional): prior precision factor. Defaults to 1.0.
        a (float, optional): sparsity exponent in lambda_n = n^-(1+a). Defaults to 1.0.
        T (float, optional): upper endpoint of the MGF window of (Z/sigma)^2, in (0, 1/2].
            Defaults to 0.25.
        rng_seed (int, optional): 64-bit unsigned seed echoed into every output. Defaults to 0.

    Raises:
        ConfigError: if any field is out of range, alpha >= 2T, or n^-(1+a)
            underflows below the smallest normal double.

    Example:
        >>> from sparse_ddm.types.model_config import ModelConfig
        >>> config = ModelConfig(n=100)
        >>> print(repr(config))
        ModelConfig(n=100, sigma=1.0, alpha=0.49, gamma=1.0, a=1.0, T=0.25, rng_seed=0)
    """

    n: int
    sigma: float = 1.0
    alpha: float = DEFAULT_ALPHA
    gamma: float = DEFAULT_GAMMA
    a: float = DEFAULT_A
    T: float = DEFAULT_T
    rng_seed: int = DEFAULT_SEED

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

        for name in ("sigma", "alpha", "gamma", "a", "T"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

        if self.sigma <= 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}")
        if self.gamma <= 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma}")
        if self.a <= 0:
            raise ConfigError(f"a must be positive, got {self.a}")
        if -(1.0 + self.a) * math.log(self.n) < _MIN_LOG_PRIOR:
            raise ConfigError(
                f"lambda_n = n^-(1+a) underflows for n={self.n}, a={self.a}; lower a"
            )
        if not 0 < self.T <= 0.5:
            raise ConfigError(f"T must lie in (0, 1/2], got {self.T}")
        if not 0 < self.alpha < 2 * self.T:
            raise ConfigError(
                f"alpha must lie in (0, 2T) = (0, {2 * self.T}), got {self.alpha}"
            )

        if int(self.rng_seed) != self.rng_seed or not 0 <= self.rng_seed <= _MAX_SEED:
            raise ConfigError(
                f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed!r}"
            )
        object.__setattr__(self, "rng_seed", int(self.rng_seed))

    @property
    def tau2(self) -> float:
        """Shared slab variance sigma^2 / (alpha + gamma)."""
        return self.sigma**2 / (self.alpha + self.gamma)

    @property
    def options(self) -> Dict[str, Any]:
        """Returns the configuration as a dictionary

        Returns:
            Dict[str, Any]: every field, under its own name

        Example:
            >>> ModelConfig(n=10).options
            {'n': 10, 'sigma': 1.0, 'alpha': 0.49, 'gamma': 1.0, 'a': 1.0, 'T': 0.25, 'rng_seed': 0}
        """
        return dataclasses.asdict(self)

    @classmethod
    def from_options(cls, options: Dict[str, Any]) -> "ModelConfig":
        """Builds a config from a dictionary, ignoring keys that are not fields.

        Raises:
            ConfigError: if ``n`` is missing or a value is invalid.
        """
        if "n" not in options:
            raise ConfigError("model options must contain 'n'")
        names = {f.name for f in dataclasses.fields(cls)}
        try:
            return cls(**{k: v for k, v in options.items() if k in names})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid model options: {exc}") from exc

    def replace(self, **overrides: Any) -> "ModelConfig":
        """Returns a copy with the given fields replaced; ``None`` values are ignored."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def __str__(self) -> str:
        return json.dumps(self.options, indent=2)
