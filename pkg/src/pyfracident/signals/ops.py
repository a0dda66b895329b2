"""
Signal Primitives

The numeric targets of every lowered operational expression: trapezoidal
convolution, repeated integration, t-power weighting. Also the seeded noise
model and the grid realization of the operational unit.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
import math

import numpy as np

try:
    from scipy.integrate import cumulative_trapezoid
except ImportError as e:
    raise ImportError(
        "scipy is required for signal integration. "
        "Install with: pip install scipy"
    ) from e

from .models import SampledSignal, common_grid

logger = logging.getLogger(__name__)


def convolve(f: SampledSignal, g: SampledSignal) -> SampledSignal:
    """
    Convolution (f * g)(t) = integral_0^t f(tau) g(t - tau) dtau.

    Sample i uses the trapezoidal rule over the i + 1 overlapping samples.
    Operands are put in a canonical order first, so convolve(f, g) and
    convolve(g, f) are bit-identical.

    Args:
        f: First operand
        g: Second operand on the same grid

    Returns:
        Convolution on the shared grid; sample 0 is always 0

    Raises:
        GridMismatchError: If the grids differ

    Example:
        >>> one = SampledSignal(0.5, [1.0, 1.0, 1.0])
        >>> convolve(one, one).values.tolist()
        [0.0, 0.5, 1.0]
    """
    dt, n = common_grid(f, g)
    a, b = f.values, g.values
    if a.tobytes() > b.tobytes():
        a, b = b, a
    full = np.convolve(a, b)[:n]
    out = dt * (full - 0.5 * (a[0] * b + a * b[0]))
    out[0] = 0.0
    return SampledSignal(dt, out)


def kernel(dt: float, n: int, k: int) -> SampledSignal:
    """
    Sampled kernel t^(k-1)/(k-1)!, the time function of s^(-k).

    Raises:
        ValueError: If k < 1
    """
    if k < 1:
        raise ValueError(f"kernel order must be >= 1, got {k}")
    t = np.arange(n) * dt
    return SampledSignal(dt, t ** (k - 1) / math.factorial(k - 1))


def repeated_integral(y: SampledSignal, k: int) -> SampledSignal:
    """
    k-fold integral of y as one kernel integral (Cauchy formula).

    Computes integral_0^t (t - tau)^(k-1)/(k-1)! y(tau) dtau with trapezoidal
    quadrature. k = 1 is the cumulative trapezoid.

    Args:
        y: Signal to integrate
        k: Number of integrations (>= 1)

    Returns:
        Integrated signal on the same grid

    Raises:
        ValueError: If k < 1

    Example:
        >>> one = SampledSignal(0.5, [1.0, 1.0, 1.0])
        >>> repeated_integral(one, 1).values.tolist()
        [0.0, 0.5, 1.0]
    """
    if int(k) != k or k < 1:
        raise ValueError(f"repeated_integral needs k >= 1, got {k}")
    k = int(k)
    if k == 1:
        return y.with_values(cumulative_trapezoid(y.values, dx=y.dt, initial=0.0))
    return convolve(kernel(y.dt, y.n, k), y)


def t_weight(f: SampledSignal, j: int) -> SampledSignal:
    """
    Weight by (-t)^j, the time function of the j-th s-derivative.

    Raises:
        ValueError: If j < 0
    """
    if int(j) != j or j < 0:
        raise ValueError(f"t_weight needs an integer j >= 0, got {j}")
    if j == 0:
        return f
    return f.with_values((-f.times) ** int(j) * f.values)


def impulse(dt: float, n: int, mass: float = 1.0) -> SampledSignal:
    """
    Grid realization of the operational constant `mass`.

    The single nonzero sample 2*mass/dt at t = 0 makes convolve(impulse, f)
    equal mass * f for t > 0 under the trapezoidal rule.
    """
    values = np.zeros(n)
    values[0] = 2.0 * mass / dt
    return SampledSignal(dt, values)


def add_white_noise(f: SampledSignal, snr_db: float, seed: int) -> SampledSignal:
    """
    Add seeded Gaussian white noise at a given signal-to-noise ratio.

    SNR is 10*log10(signal power / noise power) with power the mean square.

    Args:
        f: Clean signal
        snr_db: Requested SNR in dB; +inf returns f unchanged
        seed: Seed of the numpy generator

    Returns:
        Noisy signal (deterministic for fixed seed)

    Raises:
        ValueError: If f has zero power
    """
    if np.isposinf(snr_db):
        return f
    power = f.power()
    if power == 0.0:
        raise ValueError("cannot set a noise level relative to a zero-power signal")
    noise_power = power / 10.0 ** (float(snr_db) / 10.0)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(f.n) * math.sqrt(noise_power)
    logger.debug(f"adding noise at {snr_db} dB (std {math.sqrt(noise_power):.3g}, seed {seed})")
    return f.with_values(f.values + noise)
