"""Point estimation, structure selection and marginal intervals.

Also houses the benchmark quantities the theory is stated in: the minimax rate
``s log(en/s)`` and the beta-min signal threshold.
"""

import logging
import math
from typing import Iterable, Tuple

import numpy as np

from sparse_ddm.constants import DEFAULT_THRESHOLD, DEFAULT_ZETA
from sparse_ddm.ddm_core import (
    _check_index,
    _config_mask,
    _mixture_quantile,
    iter_sample_blocks,
    log_config_mass,
)
from sparse_ddm.errors import ConfigError, DimensionError
from sparse_ddm.types.ddm_params import DDMParams
from sparse_ddm.types.interval import Interval
from sparse_ddm.types.model_config import ModelConfig
from sparse_ddm.types.selection_result import SelectionResult

logger = logging.getLogger(__name__)


def posterior_mean(params: DDMParams) -> np.ndarray:
    """Mean vector of the measure, ``phi_i * mu_i`` coordinate-wise."""
    return params.phi * params.mu


def select(params: DDMParams, threshold: float = DEFAULT_THRESHOLD) -> SelectionResult:
    """Selects ``{i : phi_i > threshold}``.

    The inequality is strict, so weights exactly equal to the threshold are
    left out.

    Args:
        params (DDMParams): the measure.
        threshold (float, optional): inclusion threshold in (0, 1). Defaults to 0.5.

    Returns:
        SelectionResult: the selected indices and the expected dimension sum(phi).

    Raises:
        ConfigError: if ``threshold`` is outside (0, 1).

    Example:
        >>> config = ModelConfig(n=3)
        >>> select(DDMParams.from_weights([0, 0, 0], [0.9, 0.1, 0.51], config)).selected
        (0, 2)
    """
    if not 0 < threshold < 1:
        raise ConfigError(f"threshold must lie in (0, 1), got {threshold}")
    selected = tuple(int(i) for i in np.flatnonzero(params.phi > threshold))
    phi = params.phi.copy()
    phi.setflags(write=False)
    return SelectionResult(
        selected=selected,
        phi=phi,
        threshold=float(threshold),
        expected_dim=float(np.sum(params.phi)),
    )


def map_configuration(params: DDMParams) -> Tuple[int, ...]:
    """The configuration with the largest mass, ``argmax_S delta(S)``.

    The mass factorises over coordinates, so the maximiser keeps exactly the
    coordinates with ``phi_i > 1/2``, i.e. a positive logit.
    """
    return tuple(int(i) for i in np.flatnonzero(params.logit_phi > 0))


def _check_zeta(zeta: float):
    if not 0 < zeta < 0.5:
        raise ConfigError(f"zeta must lie in (0, 1/2), got {zeta}")


def marginal_interval(params: DDMParams, i: int, zeta: float = DEFAULT_ZETA) -> Interval:
    """Equal-tailed credible interval for coordinate ``i``.

    The end points are the ``zeta/2`` and ``1 - zeta/2`` quantiles of the
    coordinate's mixture; either may land exactly on the atom at 0.

    Args:
        params (DDMParams): the measure.
        i (int): coordinate index.
        zeta (float, optional): significance level in (0, 1/2). Defaults to 0.05.

    Returns:
        Interval: the interval.

    Raises:
        ConfigError: if ``zeta`` is outside (0, 1/2).
        DimensionError: if ``i`` is out of range.
    """
    _check_zeta(zeta)
    i = _check_index(params, i)
    phi, mu = params.phi[i], params.mu[i]
    lower, upper = _mixture_quantile(phi, mu, params.tau, np.array([zeta / 2, 1 - zeta / 2]))
    lower, upper = float(lower), float(upper)
    return Interval(
        lower=lower,
        upper=upper,
        contains_atom_at_zero=bool(lower <= 0.0 <= upper and phi < 1.0),
    )


def marginal_intervals(
    params: DDMParams, zeta: float = DEFAULT_ZETA
) -> Tuple[np.ndarray, np.ndarray]:
    """Lower and upper end points of every coordinate's interval."""
    _check_zeta(zeta)
    lower = _mixture_quantile(params.phi, params.mu, params.tau, zeta / 2)
    upper = _mixture_quantile(params.phi, params.mu, params.tau, 1 - zeta / 2)
    return lower, upper


def minimax_rate(n: int, s: int) -> float:
    """Squared minimax l2 rate ``s log(e n / s)``, zero at ``s = 0``.

    Args:
        n (int): dimension.
        s (int): sparsity, ``0 <= s <= n``.

    Returns:
        float: the rate, increasing in ``s``.

    Raises:
        ConfigError: if ``s`` is negative or exceeds ``n``.

    Example:
        >>> round(minimax_rate(500, 11), 2)
        52.98
    """
    if s < 0 or s > n:
        raise ConfigError(f"s must lie in [0, n] = [0, {n}], got {s}")
    if s == 0:
        return 0.0
    return s * (1.0 + math.log(n) - math.log(s))


def beta_min_threshold(n: float, sigma: float, alpha: float, a: float, K: float) -> float:
    """Signal threshold ``H = sqrt(2 sigma^2 K log(n) / alpha)``, for ``K > 2 + a``.

    ``n`` may be any real at least 1.

    Raises:
        ConfigError: if ``K <= 2 + a`` or ``n < 1``.
    """
    if not K > 2 + a:
        raise ConfigError(f"K must exceed 2 + a = {2 + a}, got {K}")
    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}")
    return math.sqrt(2.0 * sigma**2 * K * math.log(n) / alpha)


def beta_min(config: ModelConfig, K: float) -> float:
    """Beta-min threshold for the dimension and hyperparameters of ``config``.

    Example:
        >>> round(beta_min(ModelConfig(n=500, alpha=0.5, T=0.5), 3.01), 3)
        8.65
    """
    return beta_min_threshold(config.n, config.sigma, config.alpha, config.a, K)


def configuration_masses(params: DDMParams, S_star: Iterable[int]) -> Tuple[float, float, float]:
    """Mass the measure puts on configurations relative to ``S_star``.

    Returns:
        Tuple[float, float, float]: ``(exact, strict_superset, missing)``, the
        masses of ``{S = S_star}``, ``{S strictly contains S_star}`` and
        ``{S misses some index of S_star}``.
    """
    S_star = list(S_star)
    mask = _config_mask(params, S_star)
    log_contains = float(np.sum(params.log_phi[mask]))
    contains = math.exp(log_contains)
    exact = math.exp(log_config_mass(params, S_star))
    return exact, max(contains - exact, 0.0), -math.expm1(log_contains)


def dimension_tail(params: DDMParams, k: int) -> float:
    """Mass of ``{|S_theta| > k}``, by exact Poisson-binomial recursion.

    The state keeps the probabilities of sizes ``0..k`` plus one absorbing
    bucket for "more than k", so the cost is O(n k).

    Raises:
        ConfigError: if ``k`` is negative.
    """
    if k < 0:
        raise ConfigError(f"k must be nonnegative, got {k}")
    if k >= params.n:
        return 0.0
    pmf = np.zeros(k + 2, dtype=np.float64)
    pmf[0] = 1.0
    for phi in params.phi:
        shifted = np.empty_like(pmf)
        shifted[0] = pmf[0] * (1.0 - phi)
        shifted[1:-1] = pmf[1:-1] * (1.0 - phi) + pmf[:-2] * phi
        shifted[-1] = pmf[-1] + pmf[-2] * phi
        pmf = shifted
    return float(min(max(pmf[-1], 0.0), 1.0))


def concentration_mass(
    params: DDMParams, theta_star, M: float, m: int, seed: int
) -> float:
    """Monte Carlo estimate of ``Delta{||theta - theta_star||^2 > M eps_n^2(theta_star)}``.

    ``eps_n^2`` is evaluated with the sparsity floored at 1.

    Args:
        params (DDMParams): the measure.
        theta_star (ArrayLike): reference mean vector.
        M (float): multiple of the minimax rate.
        m (int): Monte Carlo draws.
        seed (int): 64-bit unsigned seed.

    Returns:
        float: fraction of draws outside the ball.
    """
    theta_star = np.asarray(theta_star, dtype=np.float64)
    if theta_star.shape != (params.n,):
        raise DimensionError(f"theta_star must have shape ({params.n},), got {theta_star.shape}")
    s = max(int(np.count_nonzero(theta_star)), 1)
    bound = M * minimax_rate(params.n, s)
    outside = 0
    for block in iter_sample_blocks(params, m, seed):
        outside += int(np.count_nonzero(np.sum((block - theta_star) ** 2, axis=1) > bound))
    return outside / m
