from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class SelectionResult:
    """The estimated configuration S_hat = {i : phi[i] > threshold}.

    Args:
        selected (Tuple[int, ...]): sorted selected indices.
        phi (np.ndarray): read-only copy of the slab weights.
        threshold (float): inclusion threshold in (0, 1); ties are excluded.
        expected_dim (float): sum of the slab weights, the mean of |S_theta|.
    """

    selected: Tuple[int, ...]
    phi: np.ndarray
    threshold: float
    expected_dim: float

    @property
    def size(self) -> int:
        return len(self.selected)

    @property
    def options(self) -> Dict[str, Any]:
        return {
            "selected": list(self.selected),
            "threshold": self.threshold,
            "expected_dim": self.expected_dim,
        }

    def __repr__(self) -> str:
        return (
            f"SelectionResult(selected={list(self.selected)}, threshold={self.threshold}, "
            f"expected_dim={self.expected_dim})"
        )
