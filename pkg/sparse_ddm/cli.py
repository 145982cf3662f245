"""Command-line front door.

Commands::

    sparse-ddm fit DATA          fit the measure, write parameters, mean and selection
    sparse-ddm select DATA       selected configuration and expected dimension
    sparse-ddm interval DATA     marginal credible intervals
    sparse-ddm ball DATA         credible ball
    sparse-ddm simulate SPEC     one replicated experiment
    sparse-ddm curve SPEC        coverage curve over theta_11
    sparse-ddm bench             timing of fit + mean + select

Exit codes: 0 success, 2 input parse error, 3 configuration violation,
4 internal numeric failure.
"""

import argparse
import logging
import sys
import time
from typing import Any, Dict, List, Optional

import numpy as np

from sparse_ddm import __version__
from sparse_ddm.constants import (
    BALL_METHODS,
    CURVE_COLUMNS,
    DEFAULT_BALL_L,
    DEFAULT_BALL_M,
    DEFAULT_MC_SAMPLES,
    DEFAULT_THRESHOLD,
    DEFAULT_ZETA,
    EXIT_NUMERIC,
    EXIT_OK,
)
from sparse_ddm.credible_ball import build_ball
from sparse_ddm.ddm_core import fit
from sparse_ddm.errors import ConfigError, DDMError
from sparse_ddm.inference import (
    map_configuration,
    marginal_interval,
    marginal_intervals,
    posterior_mean,
    select,
)
from sparse_ddm.serialization import (
    dumps,
    format_csv,
    read_json,
    read_observations,
    write_output,
)
from sparse_ddm.sim.harness import coverage_curve, run_experiment
from sparse_ddm.types.experiment import ExperimentResult, ExperimentSpec
from sparse_ddm.types.model_config import ModelConfig

logger = logging.getLogger(__name__)

DEFAULT_GRID = "0:10:1"


def parse_grid(text: str) -> List[float]:
    """Parses ``"start:stop:step"`` (stop included) or a comma list.

    Example:
        >>> len(parse_grid("0:10:0.5"))
        21
    """
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if step <= 0 or stop < start:
                raise ConfigError(f"grid {text!r} must have step > 0 and stop >= start")
            count = int(round((stop - start) / step)) + 1
            return [round(start + k * step, 12) for k in range(count)]
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse grid {text!r}") from exc


def _model_config(args: argparse.Namespace, n: int) -> ModelConfig:
    return ModelConfig(n=n).replace(
        sigma=args.sigma,
        alpha=args.alpha,
        gamma=args.gamma,
        a=args.a,
        T=args.T,
        rng_seed=args.seed,
    )


def _settings(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "zeta": args.zeta if args.zeta is not None else DEFAULT_ZETA,
        "threshold": args.threshold if args.threshold is not None else DEFAULT_THRESHOLD,
        "M": args.M if args.M is not None else DEFAULT_BALL_M,
        "L": args.L if args.L is not None else DEFAULT_BALL_L,
        "mc_samples": args.mc_samples if args.mc_samples is not None else DEFAULT_MC_SAMPLES,
    }


def _metadata(command: str, config: Dict[str, Any], seed: int, **extra: Any) -> Dict[str, Any]:
    return {
        "command": command,
        "version": __version__,
        "seed": seed,
        "config": {**config, **extra},
    }


def _fitted(args: argparse.Namespace):
    y = read_observations(args.input)
    config = _model_config(args, len(y))
    return y, config, fit(y, config)


def cmd_fit(args: argparse.Namespace) -> str:
    """Fits the measure and reports parameters, mean, selection and sum(phi)."""
    settings = _settings(args)
    y, config, params = _fitted(args)
    theta_hat = posterior_mean(params)
    selection = select(params, settings["threshold"])

    if args.format == "csv":
        chosen = set(selection.selected)
        rows = (
            (i, y[i], params.phi[i], params.logit_phi[i], theta_hat[i], i in chosen)
            for i in range(config.n)
        )
        return format_csv(("index", "y", "phi", "logit_phi", "theta_hat", "selected"), rows)

    return dumps(
        {
            **_metadata("fit", config.options, config.rng_seed, threshold=settings["threshold"]),
            "params": params.record,
            "theta_hat": theta_hat,
            "selected": list(selection.selected),
            "expected_dim": selection.expected_dim,
        }
    )


def cmd_select(args: argparse.Namespace) -> str:
    settings = _settings(args)
    _, config, params = _fitted(args)
    selection = select(params, settings["threshold"])
    if args.format == "csv":
        return format_csv(("index",), ((i,) for i in selection.selected))
    return dumps(
        {
            **_metadata("select", config.options, config.rng_seed, threshold=settings["threshold"]),
            "selection": selection.options,
            "map_configuration": list(map_configuration(params)),
        }
    )


def cmd_interval(args: argparse.Namespace) -> str:
    settings = _settings(args)
    _, config, params = _fitted(args)
    zeta = settings["zeta"]
    if args.index is not None:
        interval = marginal_interval(params, args.index, zeta)
        rows = [(args.index, interval.lower, interval.upper, interval.contains_atom_at_zero)]
    else:
        lower, upper = marginal_intervals(params, zeta)
        atom = (lower <= 0) & (upper >= 0) & (params.phi < 1)
        rows = list(zip(range(config.n), lower, upper, atom))

    columns = ("index", "lower", "upper", "contains_atom_at_zero")
    if args.format == "csv":
        return format_csv(columns, rows)
    return dumps(
        {
            **_metadata("interval", config.options, config.rng_seed, zeta=zeta),
            "intervals": [dict(zip(columns, (int(r[0]), r[1], r[2], bool(r[3])))) for r in rows],
        }
    )


def cmd_ball(args: argparse.Namespace) -> str:
    settings = _settings(args)
    _, config, params = _fitted(args)
    ball = build_ball(
        params,
        method=args.method,
        zeta=settings["zeta"],
        M=settings["M"],
        m=settings["mc_samples"],
        seed=config.rng_seed,
        L=settings["L"],
    )
    if args.format == "csv":
        return format_csv(tuple(ball.options), [tuple(ball.options.values())])
    return dumps(
        {
            **_metadata("ball", config.options, config.rng_seed, **settings, method=args.method),
            "ball": ball.options,
            "center": ball.center,
        }
    )


def _load_spec(args: argparse.Namespace) -> ExperimentSpec:
    spec = ExperimentSpec.from_dict(read_json(args.spec))
    overrides = {
        "seed": args.seed,
        "zeta": args.zeta,
        "ball_M": args.M,
        "ball_L": args.L,
        "mc_samples": args.mc_samples,
        "threshold": args.threshold,
    }
    changes = {k: v for k, v in overrides.items() if v is not None}
    model = spec.model.replace(
        sigma=args.sigma, alpha=args.alpha, gamma=args.gamma, a=args.a, T=args.T, rng_seed=args.seed
    )
    return spec.replace(model=model, **changes)


def cmd_simulate(args: argparse.Namespace) -> str:
    spec = _load_spec(args)
    result = run_experiment(spec, workers=args.workers, progress=args.verbose > 0)
    if args.format == "csv":
        record = result.record
        columns = ExperimentResult.columns()
        return format_csv(columns, [[record[c] for c in columns]])
    return dumps({**_metadata("simulate", spec.options, spec.seed), "result": result.record})


def cmd_curve(args: argparse.Namespace) -> str:
    spec = _load_spec(args)
    rows = coverage_curve(
        spec, parse_grid(args.grid), workers=args.workers, progress=args.verbose > 0
    )
    table = [(row.theta11, row.coverage, row.se, row.mean_length) for row in rows]
    if args.format == "json":
        return dumps(
            {
                **_metadata("curve", spec.options, spec.seed, grid=args.grid),
                "rows": [dict(zip(CURVE_COLUMNS, row)) for row in table],
            }
        )
    return format_csv(CURVE_COLUMNS, table)


def cmd_bench(args: argparse.Namespace) -> str:
    """Times fit + posterior_mean + select on ``n`` standard normal draws."""
    settings = _settings(args)
    seed = args.seed if args.seed is not None else 0
    config = _model_config(args, args.n)
    y = np.random.default_rng(seed).standard_normal(args.n)

    start = time.perf_counter()
    params = fit(y, config)
    theta_hat = posterior_mean(params)
    selection = select(params, settings["threshold"])
    seconds = time.perf_counter() - start
    logger.info("n=%d in %.4fs", args.n, seconds)

    report = {
        "n": args.n,
        "seconds": seconds,
        "throughput_per_second": args.n / seconds if seconds > 0 else None,
        "selected": selection.size,
        "expected_dim": selection.expected_dim,
        "max_abs_theta_hat": float(np.max(np.abs(theta_hat))),
    }
    if args.format == "csv":
        return format_csv(tuple(report), [tuple(report.values())])
    return dumps({**_metadata("bench", config.options, seed), "report": report})


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("configuration overrides")
    group.add_argument("--sigma", type=float, help="variance proxy of the errors (default 1)")
    group.add_argument("--alpha", type=float, help="learning-rate fraction (default 0.49)")
    group.add_argument("--gamma", type=float, help="prior precision factor (default 1)")
    group.add_argument("--a", type=float, help="sparsity exponent (default 1)")
    group.add_argument("--T", type=float, help="MGF window endpoint (default 0.25)")
    group.add_argument("--zeta", type=float, help="significance level (default 0.05)")
    group.add_argument("--M", type=float, help="ball inflation constant (default 1)")
    group.add_argument("--L", type=float, help="ball size constant (default 2)")
    group.add_argument("--seed", type=int, help="64-bit unsigned seed (default 0)")
    group.add_argument(
        "--mc-samples", type=int, dest="mc_samples", help="Monte Carlo draws (default 10000)"
    )
    group.add_argument("--threshold", type=float, help="selection threshold (default 0.5)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparse-ddm",
        description="Closed-form data-dependent measure for sparse normal means.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_flags()
    commands = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text in (
        ("fit", cmd_fit, "fit the measure to a data file"),
        ("select", cmd_select, "select the active coordinates"),
        ("interval", cmd_interval, "marginal credible intervals"),
        ("ball", cmd_ball, "credible ball around the mean"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("input", help="CSV file with one real per line")
        sub.set_defaults(handler=handler)
        if name == "interval":
            sub.add_argument("--index", type=int, help="single coordinate (default all)")
        if name == "ball":
            sub.add_argument("--method", choices=BALL_METHODS, default="plug_in")

    for name, handler, help_text in (
        ("simulate", cmd_simulate, "run one experiment spec"),
        ("curve", cmd_curve, "coverage curve over theta_11"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("spec", help="experiment spec JSON")
        sub.add_argument("--workers", type=int, default=1)
        sub.set_defaults(handler=handler)
        if name == "curve":
            sub.add_argument("--grid", default=DEFAULT_GRID, help="start:stop:step or a comma list")

    bench = commands.add_parser("bench", parents=[common], help="time fit + mean + select")
    bench.add_argument("--n", type=int, default=1_000_000)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command in ("curve",) else "json"

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )

    try:
        write_output(args.handler(args), args.out)
    except DDMError as exc:
        print(f"sparse-ddm: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"sparse-ddm: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
