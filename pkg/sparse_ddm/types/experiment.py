import dataclasses
import json
import math
import numbers
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from sparse_ddm.constants import (
    BALL_METHODS,
    COVERAGE_STUDY_BLOCK,
    COVERAGE_STUDY_INTERMEDIATE,
    COVERAGE_STUDY_LARGE,
    COVERAGE_STUDY_TARGET_INDEX,
    DEFAULT_BALL_L,
    DEFAULT_BALL_M,
    DEFAULT_MC_SAMPLES,
    DEFAULT_REPLICATIONS,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    DEFAULT_ZETA,
    TRUTH_PATTERNS,
)
from sparse_ddm.errors import ConfigError
from sparse_ddm.laws.error_law import ErrorSpec
from sparse_ddm.types.model_config import ModelConfig


def _is_integer(value: Any) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, numbers.Integral):
        return True
    return isinstance(value, float) and value.is_integer()


def _is_real(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


@dataclass(frozen=True)
class TruthSpec:
    """The true mean vector theta_star of a simulation.

    Args:
        n (int): dimension.
        pattern (str): ``"coverage_study"``, ``"sparse_random"`` or ``"explicit"``.
        theta11 (float, optional): 11th entry for ``"coverage_study"``; entries 1-5 are 7,
            entries 6-10 are 2, the rest 0. Defaults to 0.
        s (int, optional): number of signals for ``"sparse_random"``. Defaults to 0.
        magnitude (float, optional): absolute signal size for ``"sparse_random"``. Defaults to 0.
        values (Tuple[float, ...], optional): the full vector for ``"explicit"``.
        truth_seed (int, optional): seed placing the ``"sparse_random"`` signals and signs.
            Defaults to 0.

    Example:
        >>> TruthSpec(n=12, pattern="coverage_study", theta11=3.0).theta_star()[:12]
        array([7., 7., 7., 7., 7., 2., 2., 2., 2., 2., 3., 0.])
    """

    n: int
    pattern: str = "coverage_study"
    theta11: float = 0.0
    s: int = 0
    magnitude: float = 0.0
    values: Tuple[float, ...] = ()
    truth_seed: int = 0

    def __post_init__(self):
        values = self.values
        if not isinstance(values, (list, tuple, np.ndarray)) or not all(
            _is_real(v) for v in values
        ):
            raise ConfigError(f"truth.values must be a list of reals, got {self.values!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        found = self.problems()
        if found:
            raise ConfigError("invalid truth: " + "; ".join(found))
        for name in ("n", "s", "truth_seed"):
            object.__setattr__(self, name, int(getattr(self, name)))

    def problems(self) -> List[str]:
        found = []
        for name in ("theta11", "magnitude"):
            if not _is_real(getattr(self, name)):
                found.append(f"truth.{name} must be a real number, got {getattr(self, name)!r}")
        for name in ("s", "truth_seed"):
            value = getattr(self, name)
            if not _is_integer(value) or value < 0:
                found.append(f"truth.{name} must be a nonnegative integer, got {value!r}")
        if not _is_integer(self.n) or self.n < 1:
            found.append(f"truth.n must be a positive integer, got {self.n!r}")
            return found
        if found:
            return found

        if self.pattern not in TRUTH_PATTERNS:
            found.append(f"truth.pattern must be one of {TRUTH_PATTERNS}, got {self.pattern!r}")
        elif self.pattern == "coverage_study" and self.n < 2 * COVERAGE_STUDY_BLOCK + 1:
            minimum = 2 * COVERAGE_STUDY_BLOCK + 1
            found.append(f"the coverage_study pattern needs n >= {minimum}, got {self.n}")
        elif self.pattern == "sparse_random" and not 0 <= self.s <= self.n:
            found.append(f"truth.s must lie in [0, n], got {self.s}")
        elif self.pattern == "explicit" and len(self.values) != self.n:
            found.append(f"truth.values has length {len(self.values)}, truth.n is {self.n}")
        if not all(math.isfinite(v) for v in (self.theta11, self.magnitude, *self.values)):
            found.append("truth values must be finite")
        return found

    def theta_star(self) -> np.ndarray:
        """Returns the true mean vector."""
        theta = np.zeros(self.n, dtype=np.float64)
        if self.pattern == "coverage_study":
            theta[:COVERAGE_STUDY_BLOCK] = COVERAGE_STUDY_LARGE
            theta[COVERAGE_STUDY_BLOCK : 2 * COVERAGE_STUDY_BLOCK] = COVERAGE_STUDY_INTERMEDIATE
            theta[COVERAGE_STUDY_TARGET_INDEX] = self.theta11
        elif self.pattern == "sparse_random":
            rng = np.random.default_rng(np.random.SeedSequence([self.truth_seed, self.n, self.s]))
            support = np.sort(rng.choice(self.n, size=self.s, replace=False))
            signs = 2.0 * rng.integers(0, 2, self.s) - 1.0
            theta[support] = self.magnitude * signs
        else:
            theta[:] = self.values
        return theta

    def support(self) -> Tuple[int, ...]:
        """Indices of the nonzero entries of theta_star."""
        return tuple(int(i) for i in np.flatnonzero(self.theta_star()))

    @property
    def options(self) -> Dict[str, Any]:
        out = dataclasses.asdict(self)
        out["values"] = list(self.values)
        return out

    @classmethod
    def from_options(cls, options: Dict[str, Any]) -> "TruthSpec":
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in options.items() if k in names})


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative description of a replicated simulation.

    Args:
        truth (TruthSpec): true mean vector.
        errors (ErrorSpec): error law.
        model (ModelConfig): configuration of the fitted measure;
            ``model.n`` must equal ``truth.n``.
        replications (int, optional): number of replications. Defaults to 500.
        zeta (float, optional): significance level of intervals and balls. Defaults to 0.05.
        target_index (int, optional): coordinate whose marginal interval is tracked.
        seed (int, optional): master seed. Defaults to 0.
        ball_method (str, optional): ``"plug_in"`` or ``"quantile"``. Defaults to ``"plug_in"``.
        ball_M (float, optional): ball inflation constant. Defaults to 1.
        ball_L (float, optional): ball size constant. Defaults to 2.
        mc_samples (int, optional): draws per quantile radius. Defaults to 10_000.
        threshold (float, optional): selection threshold. Defaults to 0.5.
    """

    truth: TruthSpec
    errors: ErrorSpec
    model: ModelConfig
    replications: int = DEFAULT_REPLICATIONS
    zeta: float = DEFAULT_ZETA
    target_index: Optional[int] = None
    seed: int = DEFAULT_SEED
    ball_method: str = "plug_in"
    ball_M: float = DEFAULT_BALL_M
    ball_L: float = DEFAULT_BALL_L
    mc_samples: int = DEFAULT_MC_SAMPLES
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        found = self.problems()
        if found:
            raise ConfigError("invalid experiment spec: " + "; ".join(found))
        for name in ("replications", "mc_samples", "seed"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.target_index is not None:
            object.__setattr__(self, "target_index", int(self.target_index))

    def problems(self) -> List[str]:
        found = []
        if self.model.n != self.truth.n:
            found.append(f"model.n ({self.model.n}) must equal truth.n ({self.truth.n})")
        for name in ("replications", "mc_samples"):
            value = getattr(self, name)
            if not _is_integer(value) or value < 1:
                found.append(f"{name} must be a positive integer, got {value!r}")
        for name in ("zeta", "ball_M", "ball_L", "threshold"):
            value = getattr(self, name)
            if not _is_real(value) or not math.isfinite(value):
                found.append(f"{name} must be a finite real number, got {value!r}")
        if not _is_integer(self.seed) or not 0 <= self.seed < 2**64:
            found.append(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.ball_method not in BALL_METHODS:
            found.append(f"ball_method must be one of {BALL_METHODS}, got {self.ball_method!r}")

        if _is_real(self.zeta) and not 0 < self.zeta < 0.5:
            found.append(f"zeta must lie in (0, 1/2), got {self.zeta}")
        if self.target_index is not None:
            if not _is_integer(self.target_index):
                found.append(f"target_index must be an integer, got {self.target_index!r}")
            elif not 0 <= self.target_index < self.truth.n:
                found.append(
                    f"target_index {self.target_index} is out of range for n={self.truth.n}"
                )
        if any(_is_real(v) and not v > 0 for v in (self.ball_M, self.ball_L)):
            found.append("ball_M and ball_L must be positive")
        if self.ball_method == "quantile" and _is_integer(self.mc_samples):
            if self.mc_samples < 100:
                found.append(f"mc_samples must be at least 100, got {self.mc_samples}")
        if _is_real(self.threshold) and not 0 < self.threshold < 1:
            found.append(f"threshold must lie in (0, 1), got {self.threshold}")
        return found

    def replace(self, **changes: Any) -> "ExperimentSpec":
        return dataclasses.replace(self, **changes)

    @property
    def options(self) -> Dict[str, Any]:
        """Returns the experiment as a JSON-ready dictionary, mirroring :meth:`from_dict`."""
        return {
            "truth": self.truth.options,
            "errors": self.errors.options,
            "model": self.model.options,
            "replications": self.replications,
            "zeta": self.zeta,
            "target_index": self.target_index,
            "seed": self.seed,
            "ball_method": self.ball_method,
            "ball_M": self.ball_M,
            "ball_L": self.ball_L,
            "mc_samples": self.mc_samples,
            "threshold": self.threshold,
        }

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "ExperimentSpec":
        """Builds a spec from its JSON document.

        ``model.n`` may be left out and is then taken from ``truth.n``. Every
        problem found is reported in one ConfigError.

        Raises:
            ConfigError: listing every validation failure.
        """
        if not isinstance(document, dict):
            raise ConfigError("experiment spec must be a JSON object")
        found = []
        for key in ("truth", "errors", "model"):
            if not isinstance(document.get(key, {}), dict):
                found.append(f"{key} must be a JSON object")
        if "truth" not in document:
            found.append("truth is required")
        if found:
            raise ConfigError("invalid experiment spec: " + "; ".join(found))

        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(document) - known)
        if unknown:
            raise ConfigError(f"invalid experiment spec: unknown fields {unknown}")

        try:
            truth = TruthSpec.from_options(document["truth"])
            errors = ErrorSpec.from_options(document.get("errors", {}))
            model_options = {"n": truth.n, **document.get("model", {})}
            model = ModelConfig.from_options(model_options)
            rest = {
                k: v for k, v in document.items() if k not in ("truth", "errors", "model")
            }
            return cls(truth=truth, errors=errors, model=model, **rest)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid experiment spec: {exc}") from exc

    def __str__(self) -> str:
        return json.dumps(self.options, indent=2)


@dataclass(frozen=True)
class ExperimentResult:
    """Aggregated statistics of one experiment.

    Proportions come with binomial standard errors. ``mean_null_phi`` is NaN
    when the truth has no zero coordinates; the marginal-interval fields are NaN
    when no target index was tracked.
    """

    coverage_marginal: float
    coverage_marginal_se: float
    mean_length: float
    coverage_ball: float
    coverage_ball_se: float
    mean_radius: float
    mean_sq_error_ratio: float
    selection_exact_rate: float
    mean_expected_dim: float
    mean_null_phi: float
    radius_within_rate: float
    mean_true_config_mass: float
    replications: int = field(default=0)

    @classmethod
    def columns(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))

    @property
    def record(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def __str__(self) -> str:
        return json.dumps(self.record, indent=2)
