"""Desk-scale acceptance runs of the experiment presets. Run with ``pytest -m slow``."""

import math

import pytest

from sparse_ddm.experiments import (
    ball_coverage_v0,
    coverage_study_v0,
    selection_v0,
    sparse_rate_v0,
)
from sparse_ddm.sim.harness import coverage_curve, run_experiment

pytestmark = pytest.mark.slow


def test_coverage_study_coverage_for_strong_signals():
    rows = coverage_curve(coverage_study_v0.experiment(replications=500), [7.0, 8.0, 9.0, 10.0])
    for row in rows:
        assert 0.90 <= row.coverage <= 0.98, row
    assert 3.3 <= rows[-1].mean_length <= 4.7


def test_coverage_study_curve_is_reproducible_across_workers():
    base = coverage_study_v0.experiment(replications=40, seed=11)
    grid = [1.0, 4.0]
    serial = coverage_curve(base, grid, workers=1)
    parallel = coverage_curve(base, grid, workers=4)
    assert [r.result for r in serial] == [r.result for r in parallel]


@pytest.mark.parametrize("n", [500, 5000])
@pytest.mark.parametrize("s", [5, 25])
@pytest.mark.parametrize("factor", [1.0, 2.0])
def test_error_and_dimension_stay_of_minimax_order(n, s, factor):
    result = run_experiment(sparse_rate_v0.experiment(n=n, s=s, factor=factor, replications=200))
    assert result.mean_sq_error_ratio <= 5.0
    assert result.mean_expected_dim <= s + 1


def test_selection_consistency_improves_with_n():
    small = run_experiment(selection_v0.experiment(n=1_000, replications=200))
    large = run_experiment(selection_v0.experiment(n=10_000, replications=200))
    assert large.selection_exact_rate >= 0.9
    se = math.hypot(
        math.sqrt(small.selection_exact_rate * (1 - small.selection_exact_rate) / 200),
        math.sqrt(large.selection_exact_rate * (1 - large.selection_exact_rate) / 200),
    )
    assert large.selection_exact_rate >= small.selection_exact_rate - 2 * se


def test_plug_in_ball_coverage():
    result = run_experiment(ball_coverage_v0.experiment(method="plug_in", replications=500))
    assert result.coverage_ball >= 0.95 - 2 * result.coverage_ball_se
    assert result.radius_within_rate >= 0.95


def test_quantile_ball_coverage():
    spec = ball_coverage_v0.experiment(method="quantile", replications=100).replace(
        mc_samples=2000
    )
    result = run_experiment(spec, workers=2)
    assert result.coverage_ball >= 0.95
