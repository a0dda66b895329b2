"""
Forward Models

Generates output signals from known parameters: Voigt stress from strain,
the diffusion-wave boundary response at the orders with closed-form
kernels, and the step response of a first-order lag.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
import math
from typing import Tuple

import numpy as np

from ..errors import ModelError
from ..fracops import Convention, frac_derivative
from ..signals import SampledSignal, convolve, impulse
from .models import VoigtParams, WaveParams

logger = logging.getLogger(__name__)

# delays within this many samples of the grid count as aligned
DELAY_ALIGN_TOL = 1e-9


def voigt_forward(eps: SampledSignal, p: VoigtParams) -> SampledSignal:
    """
    Stress of the fractional Voigt model for a given strain.

    RL data with a nonzero J^(1-alpha)eps(0) carry the operational constant
    -E1*init, realized as an impulse at t = 0. Caputo data subtract eps(0)
    before differencing.

    Args:
        eps: Strain
        p: Model parameters

    Returns:
        Stress on the grid of eps

    Raises:
        ModelError: Caputo data with eps(0) != 0 but no init
    """
    if p.convention is Convention.CAPUTO:
        init = p.init
        if init is None:
            if eps.values[0] != 0.0:
                raise ModelError(
                    f"Caputo simulation needs init = eps(0) (eps(0) = {eps.values[0]:.6g})"
                )
            init = 0.0
        derivative = frac_derivative(eps, p.alpha, Convention.CAPUTO, [init])
        return eps * p.E0 + derivative * p.E1
    sigma = eps * p.E0 + frac_derivative(eps, p.alpha, Convention.RL) * p.E1
    if p.init:
        logger.debug(f"injecting RL initial constant {p.init} as an impulse")
        sigma = sigma - impulse(eps.dt, eps.n, p.E1 * p.init)
    return sigma


def wave_kernel(dt: float, n: int, c: float) -> SampledSignal:
    """
    Sampled inverse transform of exp(-c*sqrt(s)).

    k(t) = c / (2*sqrt(pi*t^3)) * exp(-c^2/(4t)), with k(0) = 0.
    """
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    t = np.arange(n) * float(dt)
    values = np.zeros(n)
    values[1:] = c / (2.0 * np.sqrt(math.pi * t[1:] ** 3)) * np.exp(-(c**2) / (4.0 * t[1:]))
    return SampledSignal(dt, values)


def diffusion_wave_forward(h: SampledSignal, p: WaveParams) -> SampledSignal:
    """
    Boundary response g = exp(-c*s^(alpha/2)) h of the diffusion-wave line.

    alpha = 2 is a pure delay by c (nearest sample if c is off the grid);
    alpha = 1 convolves with wave_kernel.
    """
    if float(p.alpha) == 2.0:
        steps = p.c / h.dt
        shift = int(round(steps))
        if abs(steps - shift) > DELAY_ALIGN_TOL * max(1.0, steps):
            logger.warning(
                f"delay {p.c} is not a multiple of dt {h.dt}; using {shift * h.dt:.6g}"
            )
        values = np.zeros(h.n)
        if shift < h.n:
            values[shift:] = h.values[: h.n - shift]
        return h.with_values(values)
    return convolve(h, wave_kernel(h.dt, h.n, p.c))


def first_order_step(
    T: float, dt: float, gain: float, pole: float
) -> Tuple[SampledSignal, SampledSignal]:
    """
    Unit-step response of dy/dt + pole*y = gain*u with y(0) = 0.

    Returns:
        (u, y) with u = 1 and y = gain/pole * (1 - exp(-pole*t))
    """
    if not pole > 0:
        raise ValueError(f"pole must be positive, got {pole}")
    u = SampledSignal.from_function(np.ones_like, T, dt)
    y = u.with_values(gain / pole * (1.0 - np.exp(-pole * u.times)))
    return u, y
