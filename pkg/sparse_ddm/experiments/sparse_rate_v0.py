from sparse_ddm.experiments.base_experiment import (
    beta_min_truth,
    make_experiment,
    model_overrides,
)


def experiment(
    n: int = 500,
    s: int = 5,
    factor: float = 1.0,
    replications: int = 200,
    seed: int = 0,
    **kwargs,
):
    # Estimation-rate grid: s signals at factor * beta-min
    truth = beta_min_truth(n, s, factor=factor, truth_seed=seed, **model_overrides(kwargs))

    return make_experiment(truth, replications=replications, seed=seed, **kwargs)
