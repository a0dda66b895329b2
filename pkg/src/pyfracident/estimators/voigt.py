"""
Voigt Estimators

Hand-coded identification of the fractional Voigt model
sigma = E0*eps + E1*D^alpha eps, and the inhomogeneous variants routed
through the general pipeline.

The homogeneous path builds the 2x2 system directly: after eliminating
s^alpha the model relation reads

    (eps * t.sigma - t.eps * sigma) = -alpha * J(eps * sigma) + alpha*E0 * J(eps * eps)

with * the convolution, t.f the signal multiplied by t and J the integral.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..fracops import Convention, frac_integral_at
from ..opcalc import ONE, Monomial, generate_equations, make_monomial
from ..signals import SampledSignal, common_grid, convolve, repeated_integral, t_weight
from .general import identify_general, solve_system
from .models import IdentOptions, IdentResult, InitRegime
from .presets import voigt_model
from .regression import (
    backsolve,
    build_regressor,
    evaluation_indices,
    regressor_from_arrays,
    solve_regressor,
    unknown_labels,
)

logger = logging.getLogger(__name__)

ALPHA = make_monomial({"alpha": 1})
ALPHA_E0 = make_monomial({"alpha": 1, "E0": 1})
E1 = make_monomial({"E1": 1})


def _check_order(result: IdentResult, upper: float = 1.0) -> None:
    alpha = result.estimates.get("alpha")
    if alpha is not None and not 0.0 < alpha < upper:
        message = f"estimated order alpha = {alpha:.4g} outside (0, {upper:g})"
        logger.warning(message)
        result.warnings.append(message)


# ============================================================================
# Homogeneous initial values
# ============================================================================


def voigt_hom_equations(
    eps: SampledSignal, sigma: SampledSignal, n_extra: Optional[int] = None
) -> Tuple[List[Monomial], List[Dict[Monomial, SampledSignal]]]:
    """
    Lowered equations of the homogeneous Voigt model.

    Args:
        eps: Strain
        sigma: Stress on the same grid
        n_extra: Integrated equations stacked below the first (default 4)

    Returns:
        (labels [alpha, E0*alpha], equations as monomial -> signal)
    """
    eps.check_grid(sigma)
    base = {
        ONE: convolve(eps, t_weight(sigma, 1)) - convolve(t_weight(eps, 1), sigma),
        ALPHA: -repeated_integral(convolve(eps, sigma), 1),
        ALPHA_E0: repeated_integral(convolve(eps, eps), 1),
    }
    labels = unknown_labels(base)
    if n_extra is None:
        n_extra = len(labels) + 2
    return labels, generate_equations(base, n_extra)


def _recover_E1(
    eps: SampledSignal,
    sigma: SampledSignal,
    first: IdentResult,
    opts: IdentOptions,
) -> IdentResult:
    # s^-(1+e) applied to sigma - E0*eps = E1*s^alpha*eps, alpha < 1
    n_rows = 1 + int(opts.theta2_extra)
    indices = np.round(first.times / eps.dt).astype(int)
    alpha = first.trajectories["alpha"]
    E0 = first.trajectories["E0"]
    rows = np.flatnonzero(np.isfinite(alpha) & np.isfinite(E0))
    integrated = [
        (repeated_integral(sigma, 1 + e), repeated_integral(eps, 1 + e)) for e in range(n_rows)
    ]
    matrix = np.zeros((rows.size, n_rows, 1))
    rhs = np.zeros((rows.size, n_rows))
    for slot, t_index in enumerate(rows):
        i = int(indices[t_index])
        for e, (sigma_e, eps_e) in enumerate(integrated):
            matrix[slot, e, 0] = frac_integral_at(eps, 1 + e - alpha[t_index], i)
            rhs[slot, e] = sigma_e.values[i] - E0[t_index] * eps_e.values[i]
    system = regressor_from_arrays([E1], matrix, rhs, indices[rows], eps.dt)
    theta, s_min, ok, colnorm = solve_regressor(system, opts.rcond)
    values = np.full(indices.size, np.nan)
    values[rows] = backsolve([E1], theta, colnorm)["E1"]
    smallest = np.full(indices.size, np.nan)
    smallest[rows] = s_min
    valid = np.zeros(indices.size, dtype=bool)
    valid[rows] = ok
    first.trajectories["E1"] = values
    first.monomials["E1"] = values
    first.diagnostics["theta2_min_singular_value"] = smallest
    first.well_conditioned = first.well_conditioned & valid
    return first


def identify_voigt_hom(
    eps: SampledSignal, sigma: SampledSignal, opts: Optional[IdentOptions] = None
) -> IdentResult:
    """
    Identify (alpha, E0, E1) from strain and stress with zero initial values.

    Args:
        eps: Strain, eps(0) = 0
        sigma: Stress on the same grid
        opts: Solver options

    Returns:
        IdentResult with trajectories alpha, E0 and E1

    Raises:
        SingularRegressorError: If the system is singular (e.g. zero signals)
        CoherenceError: Never for this model (two monomials, two unknowns)

    Example:
        >>> result = identify_voigt_hom(eps, sigma)
        >>> round(result.estimates["alpha"], 2)
        0.5
    """
    opts = opts or IdentOptions()
    dt, n = common_grid(eps, sigma)
    labels, equations = voigt_hom_equations(eps, sigma, opts.n_extra)
    system = build_regressor(labels, equations, evaluation_indices(n, dt, opts), dt)
    result = solve_system(system, opts, "voigt")
    result = _recover_E1(eps, sigma, result, opts)
    _check_order(result)
    estimates = result.estimates
    logger.info(
        f"voigt: alpha={estimates['alpha']:.6g}, E0={estimates['E0']:.6g}, "
        f"E1={estimates['E1']:.6g} at t={result.final_time:.4g}"
    )
    return result


# ============================================================================
# Inhomogeneous initial values
# ============================================================================


def _identify_inhom(
    eps: SampledSignal,
    sigma: SampledSignal,
    convention: Convention,
    mode: Union[InitRegime, str],
    opts: Optional[IdentOptions],
    constant: str,
    name: str,
) -> IdentResult:
    regime = InitRegime.parse(mode)
    if regime is InitRegime.HOMOGENEOUS:
        raise ValueError("mode must be identify-init or eliminate-init")
    model = voigt_model(convention, regime, order_bound=1)
    result = identify_general(model, eps, sigma, opts).renamed({constant: name})
    _check_order(result)
    return result


def identify_voigt_inhom_rl(
    eps: SampledSignal,
    sigma: SampledSignal,
    mode: Union[InitRegime, str] = InitRegime.IDENTIFY,
    opts: Optional[IdentOptions] = None,
) -> IdentResult:
    """
    Voigt identification under the Riemann-Liouville convention with a
    nonzero fractional initial value.

    identify-init estimates alpha, E0, E1 and kappa = E1*J^(1-alpha)eps(0);
    eliminate-init removes the constant by differentiation in s and
    estimates alpha and E0 from the overparametrized monomials (kappa and
    E1 then come out of the second stage).
    """
    return _identify_inhom(eps, sigma, Convention.RL, mode, opts, "c_1", "kappa")


def identify_voigt_inhom_caputo(
    eps: SampledSignal,
    sigma: SampledSignal,
    mode: Union[InitRegime, str] = InitRegime.IDENTIFY,
    opts: Optional[IdentOptions] = None,
) -> IdentResult:
    """
    Voigt identification under the Caputo convention with eps(0) != 0.

    identify-init estimates eps0 = eps(0) together with alpha and E0;
    eliminate-init cancels the s^(alpha-1) initial term first.
    """
    return _identify_inhom(eps, sigma, Convention.CAPUTO, mode, opts, "c_1_1", "eps0")
