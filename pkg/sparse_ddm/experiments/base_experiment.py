from typing import Any, Dict, Optional

from sparse_ddm.constants import (
    DEFAULT_BALL_L,
    DEFAULT_BALL_M,
    DEFAULT_MC_SAMPLES,
    DEFAULT_REPLICATIONS,
    DEFAULT_SEED,
    DEFAULT_ZETA,
)
from sparse_ddm.inference import beta_min
from sparse_ddm.laws.error_law import ErrorSpec
from sparse_ddm.types.experiment import ExperimentSpec, TruthSpec
from sparse_ddm.types.model_config import ModelConfig


def make_experiment(
    truth: TruthSpec,
    law: str = "gaussian",
    scale: float = 1.0,
    replications: int = DEFAULT_REPLICATIONS,
    zeta: float = DEFAULT_ZETA,
    target_index: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    ball_method: str = "plug_in",
    ball_M: float = DEFAULT_BALL_M,
    ball_L: float = DEFAULT_BALL_L,
    mc_samples: int = DEFAULT_MC_SAMPLES,
    **model: Any,
) -> ExperimentSpec:
    """
    Builds an ExperimentSpec from flat keyword arguments, which every preset is based on.

    The fitted model's sigma defaults to the error law's variance proxy, so the
    measure is configured with the true proxy unless ``sigma`` is passed.

    Args:
        truth (TruthSpec): the true mean vector.
        law (str): error law name. Default is "gaussian"
        scale (float): error scale. Default is 1.0
        replications (int): number of replications. Default is 500
        zeta (float): significance level. Default is 0.05
        target_index (int): coordinate whose interval is tracked. Default is None
        seed (int): master seed. Default is 0
        ball_method (str): "plug_in" or "quantile". Default is "plug_in"
        ball_M (float): ball inflation constant. Default is 1.0
        ball_L (float): ball size constant. Default is 2.0
        mc_samples (int): draws per quantile radius. Default is 10_000
        **model: overrides of ModelConfig fields (sigma, alpha, gamma, a, T).
    """
    errors = ErrorSpec(law, scale)
    options: Dict[str, Any] = {"sigma": errors.variance_proxy or 1.0, **model}
    config = ModelConfig(n=truth.n, rng_seed=seed, **options)
    return ExperimentSpec(
        truth=truth,
        errors=errors,
        model=config,
        replications=replications,
        zeta=zeta,
        target_index=target_index,
        seed=seed,
        ball_method=ball_method,
        ball_M=ball_M,
        ball_L=ball_L,
        mc_samples=mc_samples,
    )


def beta_min_truth(
    n: int, s: int, factor: float = 1.0, K_margin: float = 0.5, truth_seed: int = 0, **model: Any
) -> TruthSpec:
    """A sparse truth whose ``s`` signals sit at ``factor`` times the beta-min threshold.

    The threshold uses ``K = 2 + a + K_margin`` and the model overrides given.
    """
    config = ModelConfig(n=n, **model)
    magnitude = factor * beta_min(config, 2.0 + config.a + K_margin)
    return TruthSpec(
        n=n, pattern="sparse_random", s=s, magnitude=magnitude, truth_seed=truth_seed
    )


MODEL_KEYS = ("sigma", "alpha", "gamma", "a", "T")


def model_overrides(kwargs: Dict[str, Any]) -> Dict[str, Any]:
    """The ModelConfig fields among a preset's keyword arguments."""
    return {k: v for k, v in kwargs.items() if k in MODEL_KEYS}
