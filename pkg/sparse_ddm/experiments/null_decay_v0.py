from sparse_ddm.experiments.base_experiment import make_experiment
from sparse_ddm.types.experiment import TruthSpec

NULL_DECAY_NS = (100, 1_000, 10_000)


def experiment(n: int = 100, replications: int = 200, seed: int = 0, **kwargs):
    # All-zero truth; pair with sim.harness.null_phi_decay over NULL_DECAY_NS
    truth = TruthSpec(n=n, pattern="sparse_random", s=0)

    return make_experiment(truth, replications=replications, seed=seed, **kwargs)
