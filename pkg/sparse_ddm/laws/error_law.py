import math
from typing import Any, Dict

import numpy as np

from sparse_ddm.constants import DEFAULT_T, ERROR_LAWS
from sparse_ddm.errors import ConfigError


class ErrorSpec:
    """
    This class represents the law of the additive errors Z_i in ``Y_i = theta_i + Z_i``.

    There's 3 supported subgaussian laws, each with a known variance proxy:
        - ``"gaussian"``: N(0, scale^2), proxy ``scale``
        - ``"uniform"``: Uniform[-scale, scale], proxy ``scale``
        - ``"rademacher"``: ``scale`` times a random sign, proxy ``scale``

    Args:
        law (str): one of the names above.
        scale (float): the law's scale, nonnegative. Zero gives exact data.
    """

    laws = ERROR_LAWS

    def __init__(self, law: str = "gaussian", scale: float = 1.0):
        if law not in self.laws:
            raise ConfigError(f"law must be one of {self.laws}, got {law!r}")
        try:
            scale = float(scale)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"scale must be a real number, got {scale!r}") from exc
        if not (math.isfinite(scale) and scale >= 0):
            raise ConfigError(f"scale must be finite and nonnegative, got {scale}")
        self.law = law
        self.scale = scale

    @property
    def variance(self) -> float:
        if self.law == "uniform":
            return self.scale**2 / 3.0
        return self.scale**2

    @property
    def variance_proxy(self) -> float:
        """Smallest sigma with ``E exp(tZ) <= exp(sigma^2 t^2 / 2)`` for all t."""
        return self.scale

    @property
    def mgf_window(self) -> float:
        """Upper end T of the MGF window of ``(Z/sigma)^2``.

        1/2 for Gaussian errors, 1/4 otherwise.
        """
        return 0.5 if self.law == "gaussian" else DEFAULT_T

    def tail_bound(self, t: float) -> float:
        """Subgaussian bound ``P(|Z| > t) <= 2 exp(-t^2 / (2 sigma^2))``."""
        if self.scale == 0:
            return 0.0 if t >= 0 else 1.0
        return min(1.0, 2.0 * math.exp(-(t**2) / (2.0 * self.scale**2)))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """
        Draws ``size`` iid errors.

        Returns:
            np.ndarray: float64 array of length ``size``

        Example:
            >>> errors = ErrorSpec("rademacher", 2.0)
            >>> set(np.abs(errors.sample(np.random.default_rng(0), 3)))
            {2.0}
        """
        if self.scale == 0:
            return np.zeros(size, dtype=np.float64)
        if self.law == "gaussian":
            return rng.normal(0.0, self.scale, size)
        if self.law == "uniform":
            return rng.uniform(-self.scale, self.scale, size)
        signs = 2.0 * rng.integers(0, 2, size) - 1.0
        return self.scale * signs

    @property
    def options(self) -> Dict[str, Any]:
        return {"law": self.law, "scale": self.scale}

    @classmethod
    def from_options(cls, options: Dict[str, Any]) -> "ErrorSpec":
        return cls(law=options.get("law", "gaussian"), scale=options.get("scale", 1.0))

    def __repr__(self) -> str:
        return f"ErrorSpec(law={self.law}, scale={self.scale})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ErrorSpec) and self.options == other.options

    def __hash__(self) -> int:
        return hash((self.law, self.scale))
