import sys
sys.path.append('..')  # run from demos/ without installing
from sparse_ddm.experiments import coverage_study_v0
from sparse_ddm.sim.harness import coverage_curve


# Coverage study: 5 signals of 7, 5 of 2, and theta_11 swept from 0 to 10
base = coverage_study_v0.experiment(replications=200, seed=0)

rows = coverage_curve(base, [0.5 * k for k in range(21)], workers=4, progress=True)

print(f"{'theta11':>8} {'coverage':>9} {'se':>7} {'length':>7}")
for row in rows:
    # coverage dips where theta_11 is too small to detect but too large to ignore
    print(f"{row.theta11:8.1f} {row.coverage:9.3f} {row.se:7.3f} {row.mean_length:7.3f}")
