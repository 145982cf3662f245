"""Replicated simulations of the sequence model ``Y_i = theta_i + Z_i``.

Every replication ``r`` draws from its own stream ``SeedSequence([seed, r])``,
spawned into one child for the data and one for the Monte Carlo ball radius.
Records are collected in replication order and summed with ``math.fsum``, so an
experiment's result is bit-identical whatever the number of workers or the
order in which replications finish.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from sparse_ddm.constants import COVERAGE_STUDY_TARGET_INDEX
from sparse_ddm.credible_ball import build_ball, contains, within_rate
from sparse_ddm.ddm_core import fit, log_config_mass
from sparse_ddm.errors import ConfigError, NumericError
from sparse_ddm.inference import marginal_interval, minimax_rate, posterior_mean, select
from sparse_ddm.laws.error_law import ErrorSpec
from sparse_ddm.types.experiment import ExperimentResult, ExperimentSpec, TruthSpec

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.SeedSequence]


def replication_seeds(seed: int, replication: int) -> Tuple[np.random.SeedSequence, int]:
    """Data stream and Monte Carlo seed of one replication.

    Returns:
        Tuple[np.random.SeedSequence, int]: the data seed sequence and a 64-bit
        seed for the ball's Monte Carlo draws.
    """
    data_ss, ball_ss = np.random.SeedSequence([int(seed), int(replication)]).spawn(2)
    return data_ss, int(ball_ss.generate_state(1, dtype=np.uint64)[0])


def gen_data(truth: TruthSpec, errors: ErrorSpec, seed: Seed) -> np.ndarray:
    """Draws ``Y = theta_star + Z`` with iid errors from ``errors``.

    Args:
        truth (TruthSpec): true mean vector.
        errors (ErrorSpec): error law.
        seed (int or np.random.SeedSequence): seed of the error draws.

    Returns:
        np.ndarray: the observations.
    """
    rng = np.random.default_rng(seed)
    return truth.theta_star() + errors.sample(rng, truth.n)


@dataclass(frozen=True)
class ReplicationRecord:
    """Raw outcome of one replication."""

    interval_covered: Optional[bool]
    interval_length: Optional[float]
    ball_covered: bool
    radius: float
    sq_error: float
    exact_selection: bool
    expected_dim: float
    null_phi: float
    within_rate: bool
    true_config_mass: float


def run_replication(spec: ExperimentSpec, replication: int) -> ReplicationRecord:
    """Runs replication ``replication`` of ``spec``."""
    data_ss, ball_seed = replication_seeds(spec.seed, replication)
    theta_star = spec.truth.theta_star()
    support = spec.truth.support()

    y = gen_data(spec.truth, spec.errors, data_ss)
    params = fit(y, spec.model)
    theta_hat = posterior_mean(params)

    covered, length = None, None
    if spec.target_index is not None:
        interval = marginal_interval(params, spec.target_index, spec.zeta)
        covered = interval.covers(theta_star[spec.target_index])
        length = interval.length

    ball = build_ball(
        params,
        method=spec.ball_method,
        zeta=spec.zeta,
        M=spec.ball_M,
        m=spec.mc_samples,
        seed=ball_seed,
        L=spec.ball_L,
    )

    null = np.ones(spec.truth.n, dtype=bool)
    null[list(support)] = False
    null_phi = float(np.mean(params.phi[null])) if null.any() else math.nan

    sq_error = float(np.sum((theta_hat - theta_star) ** 2))
    if not math.isfinite(sq_error):
        raise NumericError(f"replication {replication} produced a non-finite error")

    return ReplicationRecord(
        interval_covered=covered,
        interval_length=length,
        ball_covered=contains(ball, theta_star),
        radius=ball.inflated_radius,
        sq_error=sq_error,
        exact_selection=select(params, spec.threshold).selected == support,
        expected_dim=float(np.sum(params.phi)),
        null_phi=null_phi,
        within_rate=within_rate(ball, theta_star),
        true_config_mass=math.exp(log_config_mass(params, support)),
    )


def _proportion(flags: Sequence[bool]) -> Tuple[float, float]:
    p = math.fsum(1.0 for flag in flags if flag) / len(flags)
    return p, math.sqrt(p * (1.0 - p) / len(flags))


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values) if values else math.nan


def aggregate(spec: ExperimentSpec, records: Sequence[ReplicationRecord]) -> ExperimentResult:
    """Aggregates replication records, taken in replication order."""
    if spec.target_index is not None:
        coverage, coverage_se = _proportion([r.interval_covered for r in records])
        mean_length = _mean([r.interval_length for r in records])
    else:
        coverage = coverage_se = mean_length = math.nan

    ball_coverage, ball_se = _proportion([r.ball_covered for r in records])
    s_star = max(len(spec.truth.support()), 1)
    rate = minimax_rate(spec.truth.n, s_star)

    null_phis = [r.null_phi for r in records if not math.isnan(r.null_phi)]
    return ExperimentResult(
        coverage_marginal=coverage,
        coverage_marginal_se=coverage_se,
        mean_length=mean_length,
        coverage_ball=ball_coverage,
        coverage_ball_se=ball_se,
        mean_radius=_mean([r.radius for r in records]),
        mean_sq_error_ratio=_mean([r.sq_error for r in records]) / rate,
        selection_exact_rate=_proportion([r.exact_selection for r in records])[0],
        mean_expected_dim=_mean([r.expected_dim for r in records]),
        mean_null_phi=_mean(null_phis),
        radius_within_rate=_proportion([r.within_rate for r in records])[0],
        mean_true_config_mass=_mean([r.true_config_mass for r in records]),
        replications=len(records),
    )


def _check_hypotheses(spec: ExperimentSpec):
    if spec.model.sigma < spec.errors.variance_proxy:
        logger.warning(
            "model sigma %.6g is below the error law's variance proxy %.6g",
            spec.model.sigma,
            spec.errors.variance_proxy,
        )
    if spec.model.alpha >= 2 * spec.errors.mgf_window:
        logger.warning(
            "alpha %.6g is not below 2T = %.6g for %s errors",
            spec.model.alpha,
            2 * spec.errors.mgf_window,
            spec.errors.law,
        )


def run_experiment(
    spec: ExperimentSpec, workers: int = 1, progress: bool = False
) -> ExperimentResult:
    """Runs every replication of ``spec`` and aggregates the outcomes.

    Args:
        spec (ExperimentSpec): the experiment.
        workers (int, optional): process pool size; 1 runs inline. Defaults to 1.
        progress (bool, optional): show a tqdm progress bar. Defaults to False.

    Returns:
        ExperimentResult: aggregated statistics, identical for any ``workers``.
    """
    if workers < 1:
        raise ConfigError(f"workers must be at least 1, got {workers}")
    _check_hypotheses(spec)
    logger.info(
        "running %d replications (n=%d, pattern=%s, workers=%d)",
        spec.replications,
        spec.truth.n,
        spec.truth.pattern,
        workers,
    )

    indices = range(spec.replications)
    bar = tqdm(total=spec.replications, disable=not progress, desc="replications")
    records: List[ReplicationRecord] = []
    if workers == 1:
        for r in indices:
            records.append(run_replication(spec, r))
            bar.update()
    else:
        chunksize = max(1, spec.replications // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for record in executor.map(
                partial(run_replication, spec), indices, chunksize=chunksize
            ):
                records.append(record)
                bar.update()
    bar.close()
    return aggregate(spec, records)


@dataclass(frozen=True)
class CurveRow:
    """One row of a coverage curve."""

    theta11: float
    coverage: float
    se: float
    mean_length: float
    result: ExperimentResult


def coverage_curve(
    base: ExperimentSpec,
    grid: Iterable[float],
    workers: int = 1,
    progress: bool = False,
) -> List[CurveRow]:
    """Coverage and mean length of the theta_11 interval across signal sizes.

    Args:
        base (ExperimentSpec): a ``"coverage_study"`` experiment; its ``target_index``
            defaults to the 11th coordinate.
        grid (Iterable[float]): values of theta_11.
        workers (int, optional): process pool size per grid point. Defaults to 1.
        progress (bool, optional): show progress bars. Defaults to False.

    Returns:
        List[CurveRow]: one row per grid value, in grid order.

    Raises:
        ConfigError: if ``base`` does not use the ``"coverage_study"`` pattern.
    """
    if base.truth.pattern != "coverage_study":
        raise ConfigError(
            f"coverage_curve needs the coverage_study pattern, got {base.truth.pattern!r}"
        )
    if base.target_index is None:
        base = base.replace(target_index=COVERAGE_STUDY_TARGET_INDEX)

    rows = []
    for value in grid:
        truth = TruthSpec(n=base.truth.n, pattern="coverage_study", theta11=float(value))
        result = run_experiment(base.replace(truth=truth), workers, progress)
        logger.info("theta11=%g coverage=%.4f", value, result.coverage_marginal)
        rows.append(
            CurveRow(
                theta11=float(value),
                coverage=result.coverage_marginal,
                se=result.coverage_marginal_se,
                mean_length=result.mean_length,
                result=result,
            )
        )
    return rows


def null_phi_decay(
    base: ExperimentSpec,
    ns: Sequence[int],
    workers: int = 1,
    progress: bool = False,
) -> Tuple[List[Tuple[int, ExperimentResult]], float]:
    """Mean null slab weight across dimensions, and its log-log slope in n.

    Under a null truth the mean slab weight should decay like n^-(1+a).

    Args:
        base (ExperimentSpec): template; its truth is replaced by an all-zero
            vector of each dimension in ``ns``.
        ns (Sequence[int]): dimensions, at least two.
        workers (int, optional): process pool size. Defaults to 1.
        progress (bool, optional): show progress bars. Defaults to False.

    Returns:
        Tuple[List[Tuple[int, ExperimentResult]], float]: per-dimension results and the slope.
    """
    if len(ns) < 2:
        raise ConfigError("null_phi_decay needs at least two dimensions")
    rows = []
    for n in ns:
        spec = base.replace(
            truth=TruthSpec(n=n, pattern="sparse_random", s=0),
            model=base.model.replace(n=n),
            target_index=None,
        )
        rows.append((int(n), run_experiment(spec, workers, progress)))

    means = np.array([result.mean_null_phi for _, result in rows])
    if not np.all(means > 0):
        raise NumericError("mean null phi underflowed to zero; the slope is undefined")
    slope = np.polyfit(np.log([n for n, _ in rows]), np.log(means), 1)[0]
    return rows, float(slope)
