"""
Sampled Signal Models

Uniform-grid container for real time functions that start at t = 0. Every
operational expression is realized numerically on such grids.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from dataclasses import dataclass
from numbers import Real
from typing import Callable, Union

import numpy as np

from ..errors import GridMismatchError

logger = logging.getLogger(__name__)

# Relative tolerance when comparing the steps of two grids
GRID_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """
    Uniformly sampled real signal on [0, T].

    Attributes:
        dt: Time step in seconds (> 0)
        values: Read-only float64 samples, values[i] = f(i*dt)

    Example:
        >>> f = SampledSignal(0.5, [0.0, 0.5, 1.0])
        >>> f.horizon
        1.0
        >>> (2 * f).values[-1]
        2.0
    """

    dt: float
    values: np.ndarray

    def __post_init__(self):
        dt = float(self.dt)
        if not np.isfinite(dt) or dt <= 0:
            raise ValueError(f"dt must be positive and finite, got {self.dt}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError(f"values must be one-dimensional, got shape {values.shape}")
        if values.size < 2:
            raise ValueError(f"a signal needs at least 2 samples, got {values.size}")
        values.setflags(write=False)
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "values", values)

    # ========================================================================
    # Constructors
    # ========================================================================

    @classmethod
    def from_function(
        cls, func: Callable[[np.ndarray], np.ndarray], horizon: float, dt: float
    ) -> "SampledSignal":
        """
        Sample a vectorized function on [0, horizon].

        Args:
            func: Function of the time array
            horizon: Final time T; T/dt must be (close to) an integer
            dt: Time step

        Returns:
            Sampled signal with round(T/dt) + 1 samples
        """
        n = grid_size(horizon, dt)
        t = np.arange(n) * float(dt)
        return cls(dt, np.broadcast_to(func(t), t.shape))

    @classmethod
    def zeros(cls, dt: float, n: int) -> "SampledSignal":
        return cls(dt, np.zeros(n))

    def with_values(self, values) -> "SampledSignal":
        """Return a signal on the same grid with new samples."""
        return SampledSignal(self.dt, values)

    # ========================================================================
    # Grid
    # ========================================================================

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n) * self.dt

    @property
    def horizon(self) -> float:
        return (self.n - 1) * self.dt

    def same_grid(self, other: "SampledSignal") -> bool:
        return self.n == other.n and abs(self.dt - other.dt) <= GRID_RTOL * self.dt

    def check_grid(self, other: "SampledSignal") -> None:
        """
        Raise if other lives on a different grid.

        Raises:
            GridMismatchError: If step or length differ
        """
        if not self.same_grid(other):
            raise GridMismatchError(
                f"grid mismatch: (dt={self.dt}, n={self.n}) vs (dt={other.dt}, n={other.n})"
            )

    def index_of(self, t: float) -> int:
        """Index of the grid point nearest to time t."""
        index = int(round(float(t) / self.dt))
        if index < 0 or index >= self.n:
            raise ValueError(f"time {t} outside [0, {self.horizon}]")
        return index

    def at(self, t: float) -> float:
        """Sample value at the grid point nearest to t."""
        return float(self.values[self.index_of(t)])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def power(self) -> float:
        """Mean square of the samples."""
        return float(np.mean(self.values**2))

    # ========================================================================
    # Arithmetic
    # ========================================================================

    def _operand(self, other: Union["SampledSignal", Real]) -> np.ndarray:
        if isinstance(other, SampledSignal):
            self.check_grid(other)
            return other.values
        if isinstance(other, Real):
            return float(other)
        return NotImplemented

    def __add__(self, other):
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return self.with_values(self.values + operand)

    __radd__ = __add__

    def __sub__(self, other):
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return self.with_values(self.values - operand)

    def __rsub__(self, other):
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return self.with_values(operand - self.values)

    def __mul__(self, other):
        # scalar only: the operational product of two signals is a convolution
        if not isinstance(other, Real):
            return NotImplemented
        return self.with_values(float(other) * self.values)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Real):
            return NotImplemented
        return self.with_values(self.values / float(other))

    def __neg__(self):
        return self.with_values(-self.values)

    def __repr__(self) -> str:
        return f"SampledSignal(dt={self.dt}, n={self.n})"


def grid_size(horizon: float, dt: float) -> int:
    """
    Number of samples of the grid 0, dt, ..., horizon.

    Raises:
        ValueError: If horizon/dt is not an integer >= 1 (within 1e-9 relative)
    """
    if dt <= 0 or horizon <= 0:
        raise ValueError(f"horizon and dt must be positive, got T={horizon}, dt={dt}")
    steps = float(horizon) / float(dt)
    rounded = int(round(steps))
    if rounded < 1 or abs(steps - rounded) > 1e-9 * max(1.0, steps):
        raise ValueError(f"horizon {horizon} is not an integer multiple of dt {dt}")
    return rounded + 1


def common_grid(*signals: SampledSignal):
    """
    Return (dt, n) shared by all signals.

    Raises:
        GridMismatchError: If any pair of signals differs in grid
    """
    if not signals:
        raise ValueError("at least one signal is required")
    first = signals[0]
    for other in signals[1:]:
        first.check_grid(other)
    return first.dt, first.n
