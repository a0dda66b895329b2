"""
Lowering

Turns a normalized operational expression into sampled signals, one per
parameter monomial:

- a product of signal symbols becomes a convolution of their time functions
- the j-th s-derivative of a symbol becomes (-t)^j weighting
- s^-k becomes k-fold integration (a single Cauchy kernel integral)

Shifted lowering handles real, possibly fractional, powers of s through
Gruenwald-Letnikov fractional integrals.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from typing import Dict, Iterable, List, Mapping, MutableMapping, Optional, Tuple

import numpy as np

try:
    from scipy.special import gamma
except ImportError as e:
    raise ImportError(
        "scipy is required for fractional kernels. "
        "Install with: pip install scipy"
    ) from e

from ..errors import ModelError
from ..fracops import frac_integral, frac_integral_at
from ..signals import SampledSignal, common_grid, convolve, kernel, repeated_integral, t_weight
from .expr import Factors, OpExpr
from .poly import Monomial

logger = logging.getLogger(__name__)

Bindings = Mapping[str, SampledSignal]
LoweredEquation = Dict[Monomial, SampledSignal]

# Powers of s closer than this to an integer are treated as integers
INTEGER_POWER_TOL = 1e-12


def normalize(e: OpExpr) -> Tuple[OpExpr, int]:
    """
    Multiply by s^-k so that no positive power of s remains.

    Args:
        e: Expression

    Returns:
        (normalized expression, k) with k = max(0, largest s-power)

    Example:
        >>> normalize(OpExpr.signal("y").shift(2))[1]
        2
    """
    k = max(e.max_s_power or 0, 0)
    if k:
        logger.debug(f"normalizing by s^-{k}")
    return e.shift(-k), k


def _grid(bindings: Bindings) -> Tuple[float, int]:
    if not bindings:
        raise ModelError("no signal bindings given")
    return common_grid(*bindings.values())


def _product(
    factors: Factors, bindings: Bindings, cache: MutableMapping
) -> SampledSignal:
    """Left-fold convolution of the weighted factors, prefixes cached."""
    if factors in cache:
        return cache[factors]
    name, order = factors[-1]
    weighted = t_weight(bindings[name], order)
    if len(factors) == 1:
        result = weighted
    else:
        result = convolve(_product(factors[:-1], bindings, cache), weighted)
    cache[factors] = result
    return result


def _integrated(
    factors: Factors, k: int, bindings: Bindings, cache: MutableMapping
) -> SampledSignal:
    key = ("int", factors, k)
    if key not in cache:
        cache[key] = repeated_integral(_product(factors, bindings, cache), k)
    return cache[key]


def lower(e: OpExpr, bindings: Bindings) -> LoweredEquation:
    """
    Sampled signal per parameter monomial of a proper expression.

    Args:
        e: Expression with all s-powers <= 0
        bindings: Signal id -> sampled signal (shared grid)

    Returns:
        Mapping monomial -> signal; the constant monomial is the key ()

    Raises:
        ModelError: For a positive s-power, an unbound signal, or a
            factorless term at s^0 (a free constant)
        GridMismatchError: If the bound signals differ in grid
    """
    dt, n = _grid(bindings)
    check_bindings(e.signal_ids, bindings)
    cache: Dict = {}
    acc: Dict[Monomial, np.ndarray] = {}
    for term in e.terms():
        if term.s_power > 0:
            raise ModelError(f"expression not proper (s^{term.s_power} present); normalize first")
        k = -term.s_power
        if term.factors:
            signal = _integrated(term.factors, k, bindings, cache) if k else _product(
                term.factors, bindings, cache
            )
        elif k == 0:
            raise ModelError(f"free constant {term.coeff} cannot enter a regressor")
        else:
            signal = kernel(dt, n, k)
        for mono, coeff in term.coeff.items():
            contribution = float(coeff) * signal.values
            if mono in acc:
                acc[mono] = acc[mono] + contribution
            else:
                acc[mono] = contribution
    return {mono: SampledSignal(dt, values) for mono, values in acc.items()}


def _power_kind(p: float) -> Tuple[bool, int]:
    q = int(round(p))
    return abs(p - q) < INTEGER_POWER_TOL, q


def fractional_kernel(dt: float, n: int, order: float) -> SampledSignal:
    """Sampled t^(order-1)/Gamma(order), the time function of s^-order (order > 0)."""
    t = np.arange(n) * dt
    values = np.zeros(n)
    values[1:] = t[1:] ** (order - 1.0) / gamma(order)
    if order == 1.0:
        values[0] = 1.0
    return SampledSignal(dt, values)


def lower_term_at(
    factors: Factors,
    power: float,
    bindings: Bindings,
    index: int,
    cache: Optional[MutableMapping] = None,
) -> float:
    """
    Value at one grid index of s^power times a product of signal symbols.

    Integer powers use repeated integrals, fractional powers GL fractional
    integrals. A factorless term stands for the operational constant.

    Raises:
        ModelError: If power > 0, or power == 0 without factors, or a factor is unbound
    """
    cache = {} if cache is None else cache
    dt, n = _grid(bindings)
    is_integer, q = _power_kind(power)
    check_bindings([name for name, _ in factors], bindings)
    if power > INTEGER_POWER_TOL:
        raise ModelError(f"positive power s^{power} cannot be lowered")
    if not factors:
        if is_integer and q == 0:
            raise ModelError("free constant cannot enter a regressor")
        order = float(-q) if is_integer else -float(power)
        t = index * dt
        if t == 0.0:
            return 1.0 if order == 1.0 else 0.0
        return float(t ** (order - 1.0) / gamma(order))
    if is_integer:
        if q == 0:
            return float(_product(factors, bindings, cache).values[index])
        return float(_integrated(factors, -q, bindings, cache).values[index])
    return frac_integral_at(_product(factors, bindings, cache), -float(power), index)


def lower_shifted(e: OpExpr, shift: float, bindings: Bindings) -> LoweredEquation:
    """
    Lower s^shift * e where shift may be fractional.

    Each term's power k + shift must be <= 0. Integer powers lower as in
    `lower`; fractional powers use frac_integral on the whole grid.

    Raises:
        ModelError: If a power is positive, or zero on a factorless term
    """
    dt, n = _grid(bindings)
    check_bindings(e.signal_ids, bindings)
    cache: Dict = {}
    acc: Dict[Monomial, np.ndarray] = {}
    for term in e.terms():
        power = term.s_power + float(shift)
        is_integer, q = _power_kind(power)
        if power > INTEGER_POWER_TOL:
            raise ModelError(f"positive power s^{power} cannot be lowered")
        if term.factors:
            if is_integer:
                signal = (
                    _integrated(term.factors, -q, bindings, cache)
                    if q
                    else _product(term.factors, bindings, cache)
                )
            else:
                signal = frac_integral(_product(term.factors, bindings, cache), -power)
        elif is_integer and q == 0:
            raise ModelError("free constant cannot enter a regressor")
        elif is_integer:
            signal = kernel(dt, n, -q)
        else:
            signal = fractional_kernel(dt, n, -power)
        for mono, coeff in term.coeff.items():
            contribution = float(coeff) * signal.values
            acc[mono] = acc[mono] + contribution if mono in acc else contribution
    return {mono: SampledSignal(dt, values) for mono, values in acc.items()}


def lower_shifted_at(
    e: OpExpr,
    shift: float,
    bindings: Bindings,
    index: int,
    cache: Optional[MutableMapping] = None,
) -> Dict[Monomial, float]:
    """Pointwise variant of lower_shifted at one grid index."""
    cache = {} if cache is None else cache
    out: Dict[Monomial, float] = {}
    for term in e.terms():
        value = lower_term_at(term.factors, term.s_power + float(shift), bindings, index, cache)
        for mono, coeff in term.coeff.items():
            out[mono] = out.get(mono, 0.0) + float(coeff) * value
    return out


def generate_equations(base: LoweredEquation, n_extra: int) -> List[LoweredEquation]:
    """
    Stack further equations by repeated integration.

    Equation j integrates every entry of `base` j times (j = 0..n_extra);
    operationally this multiplies the identification equation by s^-j.

    Args:
        base: Lowered identification equation
        n_extra: Number of additional equations (>= 0)

    Returns:
        n_extra + 1 lowered equations
    """
    if int(n_extra) != n_extra or n_extra < 0:
        raise ValueError(f"n_extra must be a non-negative integer, got {n_extra}")
    equations = [dict(base)]
    for j in range(1, int(n_extra) + 1):
        equations.append({mono: repeated_integral(signal, j) for mono, signal in base.items()})
    return equations


def check_bindings(signal_ids: Iterable[str], bindings: Bindings) -> None:
    """
    Reject expressions that name signals missing from the bindings.

    Raises:
        ModelError: Listing every unbound signal id
    """
    missing = sorted(set(signal_ids) - set(bindings))
    if missing:
        raise ModelError(f"signals not bound: {', '.join(missing)}")
