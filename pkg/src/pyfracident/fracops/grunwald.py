"""
Gruenwald-Letnikov Quadrature

Fractional integrals and derivatives on a uniform grid. At time t = i*dt the
sum runs with step dt over the past samples (N = i), matching the weight
recursion of the GL definition.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
import math
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from ..signals import SampledSignal
from .models import Convention, FracOrder, GLWeights

logger = logging.getLogger(__name__)

OrderLike = Union[FracOrder, float]


@lru_cache(maxsize=128)
def _weight_table(alpha: float, n: int) -> np.ndarray:
    k = np.arange(1, n, dtype=float)
    table = np.concatenate(([1.0], np.cumprod((k - 1.0 + alpha) / k)))
    table.setflags(write=False)
    return table


def _as_order(alpha: OrderLike) -> FracOrder:
    return alpha if isinstance(alpha, FracOrder) else FracOrder(alpha)


def gl_weights(alpha: float, N: int) -> GLWeights:
    """
    First N Gruenwald-Letnikov weights of order alpha.

    Uses the recursion A_(k+1) = ((k - 1 + alpha)/k) A_k, which equals the
    Gamma ratio Gamma(k + alpha)/(Gamma(alpha) Gamma(k + 1)).

    Args:
        alpha: Real order (negative for derivative weights)
        N: Number of weights (>= 1)

    Returns:
        GLWeights with A_1 = 1

    Example:
        >>> gl_weights(0.5, 3).coefficients.tolist()
        [1.0, 0.5, 0.375]
    """
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    alpha = float(alpha)
    return GLWeights(alpha, _weight_table(alpha, int(N)))


def frac_integral(f: SampledSignal, alpha: OrderLike) -> SampledSignal:
    """
    Fractional integral J^alpha f on the grid of f.

    J^alpha f(i*dt) ~ dt^alpha * sum_{k=0}^{i-1} A_(k+1) f((i - k)*dt).

    Args:
        f: Signal to integrate
        alpha: Order (> 0)

    Returns:
        Integrated signal; sample 0 is 0

    Raises:
        ValueError: If alpha is 0 (the identity)
    """
    order = _as_order(alpha)
    if order.alpha == 0:
        raise ValueError("frac_integral of order 0 is the identity; skip it at the call site")
    n = f.n
    table = _weight_table(order.alpha, n)
    acc = np.convolve(table, f.values)[:n] - table * f.values[0]
    return f.with_values(f.dt**order.alpha * acc)


def frac_integral_at(f: SampledSignal, alpha: float, index: int) -> float:
    """
    GL operator of real order alpha evaluated at a single grid index.

    Positive alpha integrates (sample f(0) excluded, as in frac_integral);
    non-positive alpha differentiates with order -alpha (sample f(0)
    included, as in frac_derivative). Order 0 returns the sample itself.

    Args:
        f: Signal
        alpha: Real order
        index: Grid index i

    Returns:
        Value at t = index*dt
    """
    if index < 0 or index >= f.n:
        raise IndexError(f"index {index} outside signal of length {f.n}")
    alpha = float(alpha)
    window = f.values[index::-1]
    if alpha > 0:
        window = window[:-1]
    if window.size == 0:
        return 0.0
    table = _weight_table(alpha, window.size)
    return float(f.dt**alpha * np.dot(table, window))


def frac_derivative(
    f: SampledSignal,
    alpha: OrderLike,
    convention: Union[Convention, str] = Convention.RL,
    init: Sequence[float] = (),
) -> SampledSignal:
    """
    Fractional derivative D^alpha f by the GL difference scheme.

    Riemann-Liouville: dt^-alpha * sum_{k=0}^{i} w_k f((i - k)*dt).
    Caputo: the same scheme applied to f - sum_{k<nu} init[k] t^k/k!, so
    the two conventions differ exactly by the initial-value terms.
    Integer orders reduce to backward differences.

    Args:
        f: Signal
        alpha: Order (>= 0); 0 returns f
        convention: RL or Caputo
        init: f(0), f'(0), ... (Caputo needs nu = ceil(alpha) values)

    Returns:
        Derivative on the grid of f

    Raises:
        ValueError: If Caputo is requested with fewer than nu initial values
    """
    order = _as_order(alpha)
    if order.alpha == 0:
        return f
    convention = Convention(convention)
    values = f.values
    if convention is Convention.CAPUTO:
        nu = order.nu
        if len(init) < nu:
            raise ValueError(
                f"Caputo derivative of order {order.alpha} needs {nu} initial values, "
                f"got {len(init)}"
            )
        t = f.times
        for k in range(nu):
            values = values - float(init[k]) * t**k / math.factorial(k)
    if order.is_integer:
        logger.debug(f"integer order {order.alpha}: GL reduces to backward differences")
    table = _weight_table(-order.alpha, f.n)
    return f.with_values(f.dt ** (-order.alpha) * np.convolve(table, values)[: f.n])
