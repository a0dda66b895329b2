"""
Fractional Operator Models

Orders, derivative conventions and Gruenwald-Letnikov weight tables.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class Convention(str, Enum):
    """Fractional derivative definition."""

    RL = "rl"  # Riemann-Liouville
    CAPUTO = "caputo"


@dataclass(frozen=True)
class FracOrder:
    """
    Non-negative differentiation/integration order.

    Attributes:
        alpha: Order (>= 0)

    Example:
        >>> FracOrder(0.5).nu
        1
        >>> FracOrder(2.0).nu
        2
    """

    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha < 0:
            raise ValueError(f"order must be finite and >= 0, got {self.alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def nu(self) -> int:
        """Smallest integer with nu - 1 < alpha <= nu."""
        return int(math.ceil(self.alpha))

    @property
    def is_integer(self) -> bool:
        return self.alpha == int(self.alpha)


@dataclass(frozen=True, eq=False)
class GLWeights:
    """
    Gruenwald-Letnikov coefficients A_1..A_N of order alpha.

    A_1 = 1 and A_(k+1) = ((k - 1 + alpha)/k) * A_k. Negative alpha gives
    the weights of the derivative of order -alpha.
    """

    alpha: float
    coefficients: np.ndarray

    def __len__(self) -> int:
        return int(self.coefficients.size)

    def coefficient(self, k: int) -> float:
        """A_k with 1-based k."""
        if k < 1 or k > len(self):
            raise IndexError(f"coefficient index {k} outside 1..{len(self)}")
        return float(self.coefficients[k - 1])
