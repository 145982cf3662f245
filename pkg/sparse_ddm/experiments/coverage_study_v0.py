from sparse_ddm.constants import (
    COVERAGE_STUDY_A,
    COVERAGE_STUDY_ALPHA,
    COVERAGE_STUDY_GAMMA,
    COVERAGE_STUDY_N,
    COVERAGE_STUDY_T,
    COVERAGE_STUDY_TARGET_INDEX,
    DEFAULT_REPLICATIONS,
)

# Local Imports
from sparse_ddm.experiments.base_experiment import make_experiment
from sparse_ddm.types.experiment import TruthSpec


def experiment(
    theta11: float = 7.0,
    n: int = COVERAGE_STUDY_N,
    replications: int = DEFAULT_REPLICATIONS,
    seed: int = 0,
    **kwargs,
):
    truth = TruthSpec(n=n, pattern="coverage_study", theta11=theta11)
    model = {
        "T": COVERAGE_STUDY_T,
        "alpha": COVERAGE_STUDY_ALPHA,
        "gamma": COVERAGE_STUDY_GAMMA,
        "a": COVERAGE_STUDY_A,
        **kwargs,
    }

    # Coverage study: standard normal errors, tracking the 11th coordinate
    return make_experiment(
        truth,
        law="gaussian",
        scale=1.0,
        replications=replications,
        target_index=COVERAGE_STUDY_TARGET_INDEX,
        seed=seed,
        **model,
    )
