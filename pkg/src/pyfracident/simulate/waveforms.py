"""
Test Waveforms

Deterministic excitation signals for identification experiments. All
kinds start at f(0) = 0.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from typing import Any

import numpy as np

from ..signals import SampledSignal, grid_size

logger = logging.getLogger(__name__)

SIGNAL_KINDS = ("ramp", "sine", "smooth-step", "prbs-smoothed")


def smoothstep(x: np.ndarray) -> np.ndarray:
    """Quintic 6x^5 - 15x^4 + 10x^3 on [0, 1], clamped outside."""
    x = np.clip(x, 0.0, 1.0)
    return x**3 * (10.0 - 15.0 * x + 6.0 * x**2)


def _prbs(t: np.ndarray, seed: int, bit_period: float, rise: float) -> np.ndarray:
    n_bits = int(np.ceil(t[-1] / bit_period)) + 1
    levels = np.random.default_rng(seed).integers(0, 2, n_bits).astype(float)
    levels[0] = 0.0
    out = np.zeros_like(t)
    for k in range(1, n_bits):
        step = levels[k] - levels[k - 1]
        if step:
            out += step * smoothstep((t - k * bit_period) / rise)
    return out


def test_signal(kind: str, T: float, dt: float, **params: Any) -> SampledSignal:
    """
    Build a test signal on [0, T].

    Args:
        kind: "ramp" (slope), "sine" (amplitude, omega), "smooth-step"
            (amplitude, rise) or "prbs-smoothed" (seed, bit_period, rise)
        T: Horizon, an integer multiple of dt
        dt: Time step

    Returns:
        Sampled signal with f(0) = 0

    Raises:
        ValueError: For an unknown kind or an invalid grid

    Example:
        >>> test_signal("ramp", 5.0, 0.00125).n
        4001
    """
    n = grid_size(T, dt)
    t = np.arange(n) * float(dt)
    if kind == "ramp":
        values = float(params.get("slope", 1.0)) * t
    elif kind == "sine":
        amplitude = float(params.get("amplitude", 1.0))
        values = amplitude * np.sin(float(params.get("omega", 1.0)) * t)
    elif kind == "smooth-step":
        amplitude = float(params.get("amplitude", 1.0))
        values = amplitude * smoothstep(t / float(params.get("rise", 1.0)))
    elif kind == "prbs-smoothed":
        values = _prbs(
            t,
            int(params.get("seed", 0)),
            float(params.get("bit_period", 0.5)),
            float(params.get("rise", 0.1)),
        )
    else:
        raise ValueError(f"unknown signal kind {kind!r}; expected one of {', '.join(SIGNAL_KINDS)}")
    signal = SampledSignal(dt, values)
    logger.debug(f"built {kind} signal with {signal.n} samples")
    return signal


# not a pytest test
test_signal.__test__ = False
