import sys
sys.path.append('..')  # run from demos/ without installing
import numpy as np

from sparse_ddm.credible_ball import build_ball, contains, within_rate
from sparse_ddm.ddm_core import fit
from sparse_ddm.experiments.base_experiment import beta_min_truth
from sparse_ddm.inference import select
from sparse_ddm.types.model_config import ModelConfig

n, s = 1000, 10
truth = beta_min_truth(n, s, truth_seed=1)
theta_star = truth.theta_star()

rng = np.random.default_rng(2)
y = theta_star + rng.standard_normal(n)

params = fit(y, ModelConfig(n=n))
print("selected:", select(params).selected)
print("true support:", truth.support())

for method in ("plug_in", "quantile"):
    ball = build_ball(params, method=method, m=5000, seed=3)
    print(ball)
    print("  covers theta_star:", contains(ball, theta_star))
    print("  raw radius within rate:", within_rate(ball, theta_star))
