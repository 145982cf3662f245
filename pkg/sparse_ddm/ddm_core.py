"""Closed-form fit of the data-dependent measure and its coordinate marginals.

The measure is a product of two-point mixtures,

    theta_i ~ phi_i N(mu_i, tau^2) + (1 - phi_i) delta_0,

with ``mu_i = y_i``, ``tau^2 = sigma^2 / (alpha + gamma)`` and

    logit(phi_i) = logit(lambda_n) + log(gamma / (alpha + gamma)) / 2 + alpha y_i^2 / (2 sigma^2).
"""

import logging
import math
import sys
from typing import Iterable, Iterator, Sequence, Union

import numpy as np
from scipy.special import expit, ndtr, ndtri

from sparse_ddm.constants import SAMPLE_BLOCK_ROWS
from sparse_ddm.errors import ConfigError, DimensionError, InputError, NumericError
from sparse_ddm.types.ddm_params import DDMParams
from sparse_ddm.types.model_config import ModelConfig

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]


def prior_inclusion(n: int, a: float) -> float:
    """Prior inclusion probability lambda_n = n^-(1+a).

    Args:
        n (int): dimension, at least 1.
        a (float): sparsity exponent, positive.

    Returns:
        float: a probability in (0, 1], below 1/n for n >= 2.

    Raises:
        ConfigError: if n < 1 or the probability underflows.

    Example:
        >>> prior_inclusion(100, 1.0)
        0.0001
    """
    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}")
    value = float(n) ** (-(1.0 + a))
    if value < sys.float_info.min:
        raise ConfigError(f"n^-(1+a) underflows for n={n}, a={a}")
    return value


def _logit_prior(n: int, a: float) -> float:
    # logit(n^-(1+a)) without forming 1 - lambda_n
    if n == 1:
        return math.inf
    log_lambda = -(1.0 + a) * math.log(n)
    return log_lambda - math.log1p(-math.exp(log_lambda))


def _validate_observations(y: ArrayLike, config: ModelConfig) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise DimensionError(f"y must be one-dimensional, got shape {y.shape}")
    if y.shape[0] != config.n:
        raise DimensionError(f"y has length {y.shape[0]}, config.n is {config.n}")
    if not np.all(np.isfinite(y)):
        bad = int(np.flatnonzero(~np.isfinite(y))[0])
        raise InputError(f"y[{bad}] = {y[bad]} is not finite")
    return y


def fit_logits(y: ArrayLike, config: ModelConfig) -> np.ndarray:
    """Slab-weight logits of the measure fitted to ``y``.

    Args:
        y (ArrayLike): observations, length ``config.n``.
        config (ModelConfig): the measure's configuration.

    Returns:
        np.ndarray: ``logit(phi_i)`` for every coordinate.
    """
    y = _validate_observations(y, config)
    offset = _logit_prior(config.n, config.a) + 0.5 * math.log(
        config.gamma / (config.alpha + config.gamma)
    )
    scale = config.alpha / (2.0 * config.sigma**2)
    return offset + scale * np.square(y)


def fit(y: ArrayLike, config: ModelConfig) -> DDMParams:
    """Fits the data-dependent measure to ``y``.

    Every coordinate is handled independently with vectorised numpy, so the cost
    is linear in n. The logistic transform saturates to exactly 0.0 or 1.0 rather
    than overflowing.

    Args:
        y (ArrayLike): observations, length ``config.n``, all finite.
        config (ModelConfig): the measure's configuration.

    Returns:
        DDMParams: the fitted measure.

    Raises:
        DimensionError: if ``len(y) != config.n``.
        InputError: if ``y`` has a non-finite entry.
        NumericError: if a logit comes out NaN.

    Example:
        >>> params = fit([0.0] * 100, ModelConfig(n=100, alpha=0.5, T=0.5))
        >>> round(params.tau2, 4)
        0.6667
    """
    y = _validate_observations(y, config)
    logits = fit_logits(y, config)
    if np.any(np.isnan(logits)):
        raise NumericError("fit produced a NaN logit")
    phi = expit(logits)
    logger.debug("fitted n=%d, sum(phi)=%.6g", config.n, float(np.sum(phi)))
    return DDMParams(
        mu=y,
        phi=phi,
        logit_phi=logits,
        tau2=config.tau2,
        lambda_n=prior_inclusion(config.n, config.a),
        config=config,
    )


def _check_index(params: DDMParams, i: int) -> int:
    if isinstance(i, bool) or int(i) != i or not 0 <= i < params.n:
        raise DimensionError(f"index {i} is out of range for n={params.n}")
    return int(i)


def _mixture_cdf(phi, mu, tau, t):
    with np.errstate(invalid="ignore", divide="ignore"):
        slab = ndtr((t - mu) / tau)
    return phi * slab + (1.0 - phi) * (t >= 0)


def marginal_cdf(params: DDMParams, i: int, t) -> Union[float, np.ndarray]:
    """CDF of coordinate ``i``: ``phi Phi((t - mu)/tau) + (1 - phi) 1{t >= 0}``.

    Right-continuous, with a jump of ``1 - phi`` at 0.

    Args:
        params (DDMParams): the measure.
        i (int): coordinate index.
        t (float or np.ndarray): evaluation point(s).

    Returns:
        float or np.ndarray: probabilities, shaped like ``t``.
    """
    i = _check_index(params, i)
    t_arr = np.asarray(t, dtype=np.float64)
    out = _mixture_cdf(params.phi[i], params.mu[i], params.tau, t_arr)
    return float(out) if out.ndim == 0 else out


def _mixture_quantile(phi, mu, tau, p):
    phi, mu, p = np.broadcast_arrays(
        np.asarray(phi, dtype=np.float64),
        np.asarray(mu, dtype=np.float64),
        np.asarray(p, dtype=np.float64),
    )
    out = np.zeros(phi.shape, dtype=np.float64)
    has_slab = phi > 0

    safe_phi = np.where(has_slab, phi, 1.0)
    below_zero = phi * ndtr(-mu / tau)  # left limit of the CDF at 0
    at_zero = below_zero + (1.0 - phi)

    lower = has_slab & (p <= below_zero)
    upper = has_slab & (p > at_zero)

    top = np.nextafter(1.0, 0.0)
    with np.errstate(divide="ignore", over="ignore"):
        q_lower = np.clip(p / safe_phi, 0.0, top)
        q_upper = np.clip((p - (1.0 - phi)) / safe_phi, 0.0, top)
        out = np.where(lower, np.minimum(mu + tau * ndtri(q_lower), 0.0), out)
        out = np.where(upper, np.maximum(mu + tau * ndtri(q_upper), 0.0), out)
    return out


def _check_probability(p) -> np.ndarray:
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any(~(p_arr > 0)) or np.any(~(p_arr < 1)):
        raise ConfigError(f"p must lie in (0, 1), got {p}")
    return p_arr


def marginal_quantile(params: DDMParams, i: int, p: float) -> float:
    """Generalised inverse ``inf{t : F_i(t) >= p}`` of the coordinate CDF.

    When ``p`` falls inside the jump at 0 the answer is exactly 0.

    Args:
        params (DDMParams): the measure.
        i (int): coordinate index.
        p (float): probability in (0, 1).

    Returns:
        float: the quantile.

    Raises:
        ConfigError: if ``p`` is outside (0, 1).
        DimensionError: if ``i`` is out of range.

    Example:
        >>> config = ModelConfig(n=1, alpha=0.49, gamma=0.51)
        >>> params = DDMParams.from_weights([10.0], [0.5], config)
        >>> marginal_quantile(params, 0, 0.4)
        0.0
    """
    i = _check_index(params, i)
    p_arr = _check_probability(p)
    return float(_mixture_quantile(params.phi[i], params.mu[i], params.tau, p_arr))


def marginal_quantiles(params: DDMParams, p: float) -> np.ndarray:
    """The ``p`` quantile of every coordinate at once."""
    p_arr = _check_probability(p)
    return _mixture_quantile(params.phi, params.mu, params.tau, p_arr)


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), block]))


def iter_sample_blocks(
    params: DDMParams, m: int, seed: int, block_rows: int = SAMPLE_BLOCK_ROWS
) -> Iterator[np.ndarray]:
    """Yields ``m`` draws from the measure in blocks of at most ``block_rows`` rows.

    Block ``k`` is drawn from its own stream ``SeedSequence([seed, k])``, so the
    concatenated output depends only on ``(params, m, seed, block_rows)``.
    Normal variates are only drawn for coordinates whose Bernoulli fired.

    Args:
        params (DDMParams): the measure.
        m (int): number of draws, at least 1.
        seed (int): 64-bit unsigned seed.
        block_rows (int, optional): rows per block. Defaults to SAMPLE_BLOCK_ROWS.

    Yields:
        np.ndarray: arrays of shape ``(rows, n)``.
    """
    if m < 1:
        raise ConfigError(f"m must be at least 1, got {m}")
    n = params.n
    for block, start in enumerate(range(0, m, block_rows)):
        rows = min(block_rows, m - start)
        rng = _block_rng(seed, block)
        active = rng.random((rows, n)) < params.phi
        draws = np.zeros((rows, n), dtype=np.float64)
        count = int(np.count_nonzero(active))
        if count:
            cols = np.nonzero(active)[1]
            draws[active] = params.mu[cols] + params.tau * rng.standard_normal(count)
        yield draws


def sample(params: DDMParams, m: int, seed: int) -> np.ndarray:
    """Draws ``m`` independent vectors from the measure.

    Each coordinate is ``B_i (mu_i + tau G_i)`` with ``B_i ~ Bernoulli(phi_i)``
    and ``G_i`` standard normal. The same seed gives bit-identical output.

    Args:
        params (DDMParams): the measure.
        m (int): number of draws.
        seed (int): 64-bit unsigned seed.

    Returns:
        np.ndarray: array of shape ``(m, n)``.
    """
    return np.concatenate(list(iter_sample_blocks(params, m, seed)), axis=0)


def _config_mask(params: DDMParams, S: Iterable[int]) -> np.ndarray:
    mask = np.zeros(params.n, dtype=bool)
    for i in S:
        mask[_check_index(params, i)] = True
    return mask


def log_config_mass(params: DDMParams, S: Iterable[int]) -> float:
    """Log-probability that the measure's configuration is exactly ``S``.

    ``sum_{i in S} log phi_i + sum_{i not in S} log(1 - phi_i)``; -inf when a
    factor is zero.

    Args:
        params (DDMParams): the measure.
        S (Iterable[int]): the configuration, as indices.

    Returns:
        float: the log-mass.

    Raises:
        DimensionError: if an index is out of range.
    """
    mask = _config_mask(params, S)
    terms = np.where(mask, params.log_phi, params.log_one_minus_phi)
    return float(np.sum(terms))
