from sparse_ddm.experiments.base_experiment import (
    beta_min_truth,
    make_experiment,
    model_overrides,
)


def experiment(
    n: int = 10_000,
    s: int = 5,
    K_margin: float = 0.5,
    replications: int = 200,
    seed: int = 0,
    **kwargs,
):
    # Selection consistency: signals exactly at beta-min with K = 2 + a + K_margin
    truth = beta_min_truth(
        n, s, K_margin=K_margin, truth_seed=seed, **model_overrides(kwargs)
    )

    return make_experiment(truth, replications=replications, seed=seed, **kwargs)
