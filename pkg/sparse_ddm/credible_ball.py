"""Credible balls around the mean of the measure.

Two radii are offered. The quantile radius is the smallest r whose ball holds
mass ``1 - zeta``, estimated by Monte Carlo and inflated by ``g_n = log(e n)``.
The plug-in radius is ``sqrt(s log(en/s))`` with ``s`` the size of the selected
configuration.
"""

import logging
import math
from typing import Optional

import numpy as np

from sparse_ddm.constants import (
    BALL_METHODS,
    DEFAULT_BALL_L,
    DEFAULT_BALL_M,
    DEFAULT_MC_SAMPLES,
    DEFAULT_ZETA,
    MIN_MC_SAMPLES,
)
from sparse_ddm.ddm_core import iter_sample_blocks
from sparse_ddm.errors import ConfigError, DimensionError
from sparse_ddm.inference import _check_zeta, minimax_rate, posterior_mean, select
from sparse_ddm.types.credible_ball import CredibleBall
from sparse_ddm.types.ddm_params import DDMParams

logger = logging.getLogger(__name__)


def _nearest_rank(zeta: float, m: int) -> int:
    # round() guards against 0.95 * 10_000 landing on 9500.000000000002
    return max(1, math.ceil(round((1.0 - zeta) * m, 9)))


def sample_distances(params: DDMParams, m: int, seed: int) -> np.ndarray:
    """Distances ``||theta - theta_hat||`` of ``m`` draws from the measure."""
    center = posterior_mean(params)
    return np.concatenate(
        [
            np.linalg.norm(block - center, axis=1)
            for block in iter_sample_blocks(params, m, seed)
        ]
    )


def quantile_radius(
    params: DDMParams,
    zeta: float = DEFAULT_ZETA,
    m: int = DEFAULT_MC_SAMPLES,
    seed: int = 0,
) -> float:
    """Monte Carlo quantile radius around the mean.

    Draws ``m`` vectors, sorts their distances to the mean and returns the one of
    rank ``ceil((1 - zeta) m)``, so at least ``1 - zeta`` of the draws lie in the
    closed ball.

    Args:
        params (DDMParams): the measure.
        zeta (float, optional): significance level in (0, 1/2). Defaults to 0.05.
        m (int, optional): number of draws, at least 100. Defaults to 10_000.
        seed (int, optional): 64-bit unsigned seed. Defaults to 0.

    Returns:
        float: the radius.

    Raises:
        ConfigError: if ``zeta`` or ``m`` is out of range.
    """
    _check_zeta(zeta)
    if m < MIN_MC_SAMPLES:
        raise ConfigError(f"m must be at least {MIN_MC_SAMPLES}, got {m}")
    distances = np.sort(sample_distances(params, m, seed))
    return float(distances[_nearest_rank(zeta, m) - 1])


def plug_in_radius_sq(params: DDMParams) -> float:
    """Squared plug-in radius ``s log(en/s)``, ``s = max(|S_hat|, 1)``."""
    s = max(select(params).size, 1)
    return minimax_rate(params.n, s)


def plug_in_radius(params: DDMParams) -> float:
    """Plug-in radius ``sqrt(s log(en/s))``; an empty selection counts as ``s = 1``.

    Example:
        >>> config = ModelConfig(n=500)
        >>> round(plug_in_radius(fit(np.zeros(500), config)), 3)
        2.686
    """
    return math.sqrt(plug_in_radius_sq(params))


def build_ball(
    params: DDMParams,
    method: str = "plug_in",
    zeta: float = DEFAULT_ZETA,
    M: float = DEFAULT_BALL_M,
    m: int = DEFAULT_MC_SAMPLES,
    seed: int = 0,
    L: float = DEFAULT_BALL_L,
) -> CredibleBall:
    """Builds a credible ball centred at the mean of the measure.

    The inflated radius is ``M * g_n * raw_radius`` with ``g_n = log(e n)`` for
    the quantile method and ``g_n = 1`` for the plug-in method.

    Args:
        params (DDMParams): the measure.
        method (str, optional): ``"quantile"`` or ``"plug_in"``. Defaults to ``"plug_in"``.
        zeta (float, optional): significance level. Defaults to 0.05.
        M (float, optional): inflation constant, positive. Defaults to 1.
        m (int, optional): Monte Carlo draws for the quantile method. Defaults to 10_000.
        seed (int, optional): seed for the quantile method. Defaults to 0.
        L (float, optional): size constant recorded on the ball. Defaults to 2.

    Returns:
        CredibleBall: the ball.

    Raises:
        ConfigError: on an unknown method or invalid constants.
    """
    if method not in BALL_METHODS:
        raise ConfigError(f"method must be one of {BALL_METHODS}, got {method!r}")
    if not M > 0:
        raise ConfigError(f"M must be positive, got {M}")
    if not L > 0:
        raise ConfigError(f"L must be positive, got {L}")
    _check_zeta(zeta)

    mc_samples: Optional[int] = None
    ball_seed: Optional[int] = None
    if method == "quantile":
        raw = quantile_radius(params, zeta, m, seed)
        g_n = 1.0 + math.log(params.n)
        mc_samples, ball_seed = int(m), int(seed)
    else:
        raw = plug_in_radius(params)
        g_n = 1.0

    center = posterior_mean(params)
    center.setflags(write=False)
    return CredibleBall(
        center=center,
        raw_radius=raw,
        inflated_radius=M * g_n * raw,
        method=method,
        zeta=float(zeta),
        inflation_M=float(M),
        g_n=g_n,
        size_L=float(L),
        mc_samples=mc_samples,
        seed=ball_seed,
    )


def contains(ball: CredibleBall, theta) -> bool:
    """Whether ``||theta - center|| <= inflated_radius`` (boundary included).

    Raises:
        DimensionError: if ``theta`` does not have the ball's dimension.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != ball.center.shape:
        raise DimensionError(
            f"theta must have shape {ball.center.shape}, got {theta.shape}"
        )
    return bool(np.linalg.norm(theta - ball.center) <= ball.inflated_radius)


def within_rate(ball: CredibleBall, theta_star) -> bool:
    """Size check ``raw_radius^2 <= L eps_n^2(theta_star)``, sparsity floored at 1."""
    theta_star = np.asarray(theta_star, dtype=np.float64)
    s = max(int(np.count_nonzero(theta_star)), 1)
    return ball.raw_radius**2 <= ball.size_L * minimax_rate(ball.n, s)
