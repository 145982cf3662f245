from sparse_ddm.constants import DEFAULT_BALL_M, DEFAULT_REPLICATIONS
from sparse_ddm.experiments.base_experiment import (
    beta_min_truth,
    make_experiment,
    model_overrides,
)


def experiment(
    n: int = 500,
    s: int = 5,
    method: str = "plug_in",
    M: float = DEFAULT_BALL_M,
    replications: int = DEFAULT_REPLICATIONS,
    seed: int = 0,
    **kwargs,
):
    # Credible-ball coverage with signals on the beta-min scale
    truth = beta_min_truth(n, s, truth_seed=seed, **model_overrides(kwargs))

    return make_experiment(
        truth,
        replications=replications,
        seed=seed,
        ball_method=method,
        ball_M=M,
        **kwargs,
    )
