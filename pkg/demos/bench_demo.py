import sys
sys.path.append('..')  # run from demos/ without installing
import time

import numpy as np

from sparse_ddm.ddm_core import fit
from sparse_ddm.inference import posterior_mean, select
from sparse_ddm.types.model_config import ModelConfig

# fit + mean + select is linear in n; expect roughly a tenfold step per row
for n in (10**4, 10**5, 10**6, 10**7):
    y = np.random.default_rng(0).standard_normal(n)
    config = ModelConfig(n=n)

    start = time.perf_counter()
    params = fit(y, config)
    posterior_mean(params)
    selection = select(params)
    seconds = time.perf_counter() - start

    print(f"n={n:>9}  {seconds:8.4f}s  selected={selection.size}")
