"""
Diffusion-Wave Estimator

Identifies the order alpha and the ratio c = L/v of a fractional
diffusion-wave line from its boundary input h and the response g at
distance L. The transfer operator exp(-c*s^(alpha/2)) is removed by
differentiating in s; what remains is linear in alpha and, once alpha is
known, in c:

    t.g * h - g * t.h = (alpha/2) * c * J^(1-alpha/2)(g * h)

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from typing import Optional

import numpy as np

from ..errors import SingularRegressorError
from ..fracops import frac_integral_at
from ..signals import SampledSignal, common_grid, convolve, repeated_integral, t_weight
from .general import check_coherence, solve_theta1
from .models import IdentOptions, IdentResult
from .presets import diffusion_wave_model

logger = logging.getLogger(__name__)

KNOWN_CHOICES = ("L", "v", "ratio-only")

# denominators below this fraction of their largest magnitude are rejected
DENOMINATOR_RTOL = 1e-8


def _ratio(
    h: SampledSignal,
    g: SampledSignal,
    alpha: np.ndarray,
    indices: np.ndarray,
    n_rows: int,
) -> np.ndarray:
    """Least-squares ratio c over the stacked integrated equations, per time."""
    lhs = convolve(g, t_weight(h, 1)) - convolve(t_weight(g, 1), h)
    gh = convolve(g, h)
    stacked = [lhs] + [repeated_integral(lhs, e) for e in range(1, n_rows)]
    columns = np.full((indices.size, n_rows), np.nan)
    targets = np.full((indices.size, n_rows), np.nan)
    for t_index, i in enumerate(indices):
        if not np.isfinite(alpha[t_index]):
            continue
        half = alpha[t_index] / 2.0
        for e in range(n_rows):
            columns[t_index, e] = half * frac_integral_at(gh, 1.0 - half + e, int(i))
            targets[t_index, e] = stacked[e].values[int(i)]
    norm = np.sqrt(np.nansum(columns**2, axis=1))
    finite = np.isfinite(columns).all(axis=1)
    scale = np.max(norm[finite]) if finite.any() else 0.0
    good = finite & (norm > DENOMINATOR_RTOL * scale) & (scale > 0)
    ratio = np.full(indices.size, np.nan)
    ratio[good] = np.sum(columns[good] * targets[good], axis=1) / norm[good] ** 2
    return ratio


def identify_diffusion_wave(
    h: SampledSignal,
    g: SampledSignal,
    known: str = "ratio-only",
    known_value: Optional[float] = None,
    opts: Optional[IdentOptions] = None,
) -> IdentResult:
    """
    Identify alpha and L/v of a diffusion-wave line.

    Args:
        h: Boundary input, zero history
        g: Response at distance L, same grid
        known: Which of L and v is known ("L", "v" or "ratio-only")
        known_value: Value of the known quantity
        opts: Solver options (theta2_extra sets the ratio equations)

    Returns:
        IdentResult with trajectories alpha and ratio, plus v (L known)
        or L (v known)

    Raises:
        ValueError: For an unknown `known` choice or a missing value
        SingularRegressorError: Zero signals or vanishing denominators
    """
    if known not in KNOWN_CHOICES:
        raise ValueError(f"known must be one of {', '.join(KNOWN_CHOICES)}, got {known!r}")
    if known != "ratio-only" and (known_value is None or not known_value > 0):
        raise ValueError(f"known {known} needs a positive known_value, got {known_value}")
    opts = opts or IdentOptions()
    dt, _ = common_grid(h, g)
    model = diffusion_wave_model()
    first = solve_theta1(model, h, g, opts)
    check_coherence(first, opts)
    alpha = 2.0 * first.trajectories["beta"]
    indices = np.round(first.times / dt).astype(int)
    ratio = _ratio(h, g, alpha, indices, 1 + int(opts.theta2_extra))
    if not np.isfinite(ratio).any():
        raise SingularRegressorError("fractional integral of g*h vanishes at every time", 0.0)

    trajectories = {"alpha": alpha, "ratio": ratio}
    if known == "L":
        trajectories["L"] = np.full(ratio.shape, float(known_value))
        with np.errstate(divide="ignore", invalid="ignore"):
            trajectories["v"] = known_value / ratio
    elif known == "v":
        trajectories["v"] = np.full(ratio.shape, float(known_value))
        trajectories["L"] = ratio * known_value

    result = IdentResult(
        times=first.times,
        trajectories=trajectories,
        monomials=dict(first.monomials),
        coherence=first.coherence,
        min_singular=first.min_singular,
        well_conditioned=first.well_conditioned,
        warnings=list(first.warnings),
        model=model.name,
    )
    estimates = result.estimates
    if not 0.0 < estimates["alpha"] <= 2.0:
        message = f"estimated order alpha = {estimates['alpha']:.4g} outside (0, 2]"
        logger.warning(message)
        result.warnings.append(message)
    logger.info(
        f"diffusion-wave: alpha={estimates['alpha']:.6g}, L/v={estimates['ratio']:.6g} "
        f"at t={result.final_time:.4g}"
    )
    return result
