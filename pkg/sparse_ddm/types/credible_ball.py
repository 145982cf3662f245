import json
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class CredibleBall:
    """Euclidean ball ``{theta : ||theta - center|| <= inflated_radius}``.

    Args:
        center (np.ndarray): mean vector of the measure.
        raw_radius (float): radius before inflation.
        inflated_radius (float): ``inflation_M * g_n * raw_radius``.
        method (str): ``"quantile"`` or ``"plug_in"``.
        zeta (float): significance level in (0, 1/2).
        inflation_M (float): user inflation constant M.
        g_n (float): log(e n) for quantile balls, 1 for plug-in balls.
        size_L (float): constant L of the size check ``raw_radius^2 <= L eps_n^2``.
        mc_samples (int, optional): Monte Carlo draws behind a quantile radius.
        seed (int, optional): seed of those draws.
    """

    center: np.ndarray
    raw_radius: float
    inflated_radius: float
    method: str
    zeta: float
    inflation_M: float
    g_n: float
    size_L: float
    mc_samples: Optional[int] = None
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        return self.center.shape[0]

    @property
    def options(self) -> Dict[str, Any]:
        """Returns the JSON record of the ball (the center is left out)."""
        return {
            "method": self.method,
            "zeta": self.zeta,
            "M": self.inflation_M,
            "g_n": self.g_n,
            "L": self.size_L,
            "raw_radius": self.raw_radius,
            "inflated_radius": self.inflated_radius,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
        }

    def __repr__(self) -> str:
        return (
            f"CredibleBall(method={self.method}, n={self.n}, raw_radius={self.raw_radius}, "
            f"inflated_radius={self.inflated_radius})"
        )

    def __str__(self) -> str:
        return json.dumps(self.options, indent=2)
