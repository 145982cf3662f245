from dataclasses import dataclass
from typing import Any, Dict

from sparse_ddm.errors import ConfigError


@dataclass(frozen=True)
class Interval:
    """A marginal credible interval for one coordinate.

    Args:
        lower (float): lower end point.
        upper (float): upper end point.
        contains_atom_at_zero (bool): True if 0 lies in the interval and the
            coordinate carries a point mass at 0.
    """

    lower: float
    upper: float
    contains_atom_at_zero: bool

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ConfigError(f"interval lower {self.lower} exceeds upper {self.upper}")

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def covers(self, value: float) -> bool:
        """Closed-interval membership."""
        return self.lower <= value <= self.upper

    @property
    def options(self) -> Dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "contains_atom_at_zero": self.contains_atom_at_zero,
        }
