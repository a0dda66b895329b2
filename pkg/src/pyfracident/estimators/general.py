"""
General Identification Pipeline

Mechanized elimination for grouped fractional models:

1. pre-process initial-value terms according to the regime
2. build the operator matrix, take its determinant, normalize by s^-k,
   lower to signals, stack integrated equations, solve by least squares
   over the first-stage monomials and back-solve physical parameters
3. recover the common-factor parameters from a fractional-integral
   regressor with the first-stage estimates substituted

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
import math
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from ..errors import CoherenceError, ModelError, SingularRegressorError
from ..fracops import Convention
from ..opcalc import (
    ONE,
    FracOpExpr,
    Monomial,
    OpExpr,
    ParamPoly,
    build_operator_matrix,
    build_P,
    det,
    generate_equations,
    lower,
    lower_term_at,
    monomial_mul,
    monomial_split,
    normalize,
)
from ..signals import SampledSignal, common_grid
from .models import IdentOptions, IdentResult, InitRegime, ModelSpec, RegressorSystem
from .regression import (
    backsolve,
    build_regressor,
    coherence_residual,
    evaluation_indices,
    is_overparametrized,
    monomial_trajectories,
    refine_physical,
    regressor_from_arrays,
    solve_regressor,
    unknown_labels,
)

logger = logging.getLogger(__name__)

# (tag, expression, common factor)
GroupTriple = Tuple[ParamPoly, OpExpr, ParamPoly]


# ============================================================================
# Stage 1: initial-value pre-processing
# ============================================================================


def _factor_power(expr: OpExpr) -> int:
    """Largest s-power among terms with signal factors, clamped at 0."""
    return max([t.s_power for t in expr.terms() if t.factors] + [0])


def _order_count(tag: ParamPoly, order_bound: int) -> int:
    if tag.is_constant:
        return int(math.ceil(tag.constant_value()))
    return order_bound


def initial_value_terms(model: ModelSpec) -> List[Tuple[str, ParamPoly, int]]:
    """
    Unknown initial-value constants as (name, tag, s-power).

    Riemann-Liouville data carry a polynomial in s in the exponent-free
    slot: constants c_i * s^(i-1). Caputo data carry c_j_i * s^(K_j - i)
    under each group's exponent, where K_j is the group's largest s-power.
    Homogeneous models have none.
    """
    if model.regime is InitRegime.HOMOGENEOUS:
        return []
    bound = model.order_bound
    terms: List[Tuple[str, ParamPoly, int]] = []
    if model.convention is Convention.RL:
        count = max(
            _order_count(g.exponent, bound) + _factor_power(g.expr) for g in model.groups
        )
        zero = ParamPoly.zero()
        terms = [(f"c_{i}", zero, i - 1) for i in range(1, count + 1)]
    else:
        for j, group in enumerate(model.groups):
            top = _factor_power(group.expr)
            count = _order_count(group.exponent, bound) + top
            terms.extend(
                (f"c_{j}_{i}", group.exponent, top - i) for i in range(1, count + 1)
            )
    return terms


def augmented_groups(model: ModelSpec, with_initial_values: bool = True) -> List[GroupTriple]:
    """Groups as (tag, expr, factor), with initial-value constants added."""
    groups: Dict[ParamPoly, List] = {
        g.exponent: [g.exponent, g.expr, g.factor] for g in model.groups
    }
    if with_initial_values:
        for name, tag, power in initial_value_terms(model):
            term = OpExpr.power_of_s(power, ParamPoly.symbol(name))
            if tag in groups:
                groups[tag][1] = groups[tag][1] + term
            else:
                groups[tag] = [tag, term, ParamPoly.one()]
    return [tuple(groups[tag]) for tag in groups]


def preprocess(model: ModelSpec) -> FracOpExpr:
    """
    Model equation ready for the operator matrix.

    Homogeneous: the grouped equation. Identify: the equation with unknown
    initial-value constants added. Eliminate: RL applies d/ds once per
    constant; Caputo applies the annihilator s*d/ds - beta for every
    initial-value term proportional to s^beta.
    """
    if model.regime is InitRegime.IDENTIFY:
        return FracOpExpr({tag: expr for tag, expr, _ in augmented_groups(model)})
    equation = FracOpExpr({g.exponent: g.expr for g in model.groups})
    if model.regime is InitRegime.HOMOGENEOUS:
        return equation
    terms = initial_value_terms(model)
    if model.convention is Convention.RL:
        for _ in terms:
            equation = equation.dds()
        logger.debug(f"eliminated {len(terms)} RL initial constants by d/ds")
        return equation
    betas: List[ParamPoly] = []
    for _, tag, power in terms:
        beta = tag + power
        if beta not in betas:
            betas.append(beta)
    for beta in betas:
        equation = equation.annihilate(beta)
    logger.debug(f"eliminated Caputo initial terms with annihilators {[str(b) for b in betas]}")
    return equation


# ============================================================================
# Stage 2: elimination and first-stage regression
# ============================================================================


def identification_equation(model: ModelSpec) -> Tuple[OpExpr, int]:
    """
    Normalized determinant equation of the model.

    Returns:
        (expression with non-positive s-powers only, normalization shift k)

    Raises:
        ModelError: If the determinant vanishes identically
    """
    if model.regime is InitRegime.HOMOGENEOUS:
        P, _ = build_P(model)
    else:
        P, _ = build_operator_matrix(preprocess(model))
    determinant = det(P)
    if determinant.is_zero:
        raise ModelError(f"determinant of the operator matrix of {model.name} vanishes")
    normalized, k = normalize(determinant)
    if any(not t.factors and t.s_power == 0 for t in normalized.terms()):
        normalized, k = normalized.shift(-1), k + 1
    logger.debug(f"{model.name}: det P has {len(normalized)} terms after s^-{k}")
    return normalized, k


def _bindings(model: ModelSpec, u: SampledSignal, y: SampledSignal) -> Dict[str, SampledSignal]:
    u.check_grid(y)
    return {model.input_id: u, model.output_id: y}


def lowered_equations(
    model: ModelSpec, u: SampledSignal, y: SampledSignal, n_extra: Optional[int] = None
) -> Tuple[List[Monomial], List[Dict[Monomial, SampledSignal]]]:
    """
    Lowered and stacked identification equations.

    Args:
        model: Model declaration
        u: Input signal
        y: Output signal
        n_extra: Extra integrated equations (None = unknown monomials + 2)

    Returns:
        (unknown monomial labels, stacked lowered equations)
    """
    equation, _ = identification_equation(model)
    base = lower(equation, _bindings(model, u, y))
    labels = unknown_labels(base)
    if n_extra is None:
        n_extra = len(labels) + 2
    return labels, generate_equations(base, n_extra)


def solve_system(system: RegressorSystem, opts: IdentOptions, name: str = "") -> IdentResult:
    """
    Solve a regressor over the sweep and back-solve physical parameters.

    Raises:
        SingularRegressorError: If no evaluation time is well-conditioned
    """
    theta, s_min, ok, colnorm = solve_regressor(system, opts.rcond)
    if not ok.any():
        smallest = float(np.nanmin(s_min)) if s_min.size else 0.0
        raise SingularRegressorError(
            f"regressor singular at every evaluation time "
            f"(smallest singular value {smallest:.3g})",
            smallest,
        )
    dropped = int((~ok).sum())
    if dropped:
        logger.warning(f"{dropped} of {ok.size} evaluation times dropped as ill-conditioned")
    physical = backsolve(system.labels, theta, colnorm)
    if opts.refine and is_overparametrized(system.labels):
        logger.debug(f"{name}: refining {len(physical)} parameters as a nonlinear problem")
        physical = refine_physical(system.labels, system.matrix, system.rhs, physical)
    coherence = coherence_residual(system.labels, theta, physical, system.matrix, system.rhs)
    return IdentResult(
        times=system.times,
        trajectories=physical,
        monomials=monomial_trajectories(system.labels, theta),
        coherence=coherence,
        min_singular=s_min,
        well_conditioned=ok,
        model=name,
    )


def check_coherence(result: IdentResult, opts: IdentOptions) -> None:
    """Raise or warn when the final coherence residual exceeds the tolerance."""
    residual = result.coherence_residual
    if residual > opts.coherence_tol:
        message = f"monomial coherence residual {residual:.3g} exceeds {opts.coherence_tol}"
        if opts.strict:
            raise CoherenceError(message, residual)
        logger.warning(message)
        result.warnings.append(message)


def solve_theta1(
    model: ModelSpec, u: SampledSignal, y: SampledSignal, opts: Optional[IdentOptions] = None
) -> IdentResult:
    """First stage: parameters surviving the elimination."""
    opts = opts or IdentOptions()
    dt, n = common_grid(u, y)
    labels, equations = lowered_equations(model, u, y, opts.n_extra)
    logger.debug(f"{model.name}: {len(labels)} unknown monomials, {len(equations)} equations")
    system = build_regressor(labels, equations, evaluation_indices(n, dt, opts), dt)
    return solve_system(system, opts, model.name)


# ============================================================================
# Stage 3: common-factor parameters
# ============================================================================


def recover_theta2(
    model: ModelSpec,
    theta1: Mapping[str, Union[float, np.ndarray]],
    u: SampledSignal,
    y: SampledSignal,
    opts: Optional[IdentOptions] = None,
    indices: Optional[np.ndarray] = None,
) -> IdentResult:
    """
    Second stage: recover parameters that appear only as common factors.

    The model equation is multiplied by s^-nu with nu > max order, the
    first-stage estimates substituted, and further equations stacked by
    extra powers s^-e. Fractional powers lower to GL fractional integrals
    evaluated per time with that time's order estimates. Initial-value
    constants not estimated in the first stage enter as extra unknowns.

    Args:
        model: Model declaration
        theta1: First-stage estimates, scalars or arrays over `indices`
        u: Input signal
        y: Output signal
        opts: Options (theta2_extra, sweep, rcond)
        indices: Grid indices of the evaluation times (default: sweep)

    Returns:
        IdentResult with the second-stage parameters

    Raises:
        ModelError: If the model has no second-stage parameters
        SingularRegressorError: If the regressor is singular everywhere
    """
    opts = opts or IdentOptions()
    if not model.theta2:
        raise ModelError(f"model {model.name} has no common-factor parameters to recover")
    bindings = _bindings(model, u, y)
    dt, n = common_grid(u, y)
    if indices is None:
        indices = evaluation_indices(n, dt, opts)
    indices = np.asarray(indices)
    n_times = indices.size
    known = {
        name: np.broadcast_to(np.asarray(value, dtype=float), (n_times,)).copy()
        for name, value in theta1.items()
    }
    missing = model.theta1 - set(known)
    if missing:
        raise ModelError(f"first-stage estimates missing for {', '.join(sorted(missing))}")
    inhomogeneous = model.regime is not InitRegime.HOMOGENEOUS
    groups = augmented_groups(model, with_initial_values=inhomogeneous)
    valid = np.ones(n_times, dtype=bool)
    for values in known.values():
        valid &= np.isfinite(values)

    # columns: unknown parts of coefficient x factor monomials
    known_names = set(known)
    labels_set = set()
    for tag, expr, factor in groups:
        for term in expr.terms():
            for cm, _ in term.coeff.items():
                for fm, _ in factor.items():
                    _, unknown = monomial_split(monomial_mul(cm, fm), known_names)
                    if unknown != ONE:
                        labels_set.add(unknown)
    labels = sorted(labels_set, key=lambda m: (sum(p for _, p in m), m))
    if not labels:
        raise ModelError("second stage has no unknown columns")
    n_rows = len(labels) + int(opts.theta2_extra)
    column_of = {label: i for i, label in enumerate(labels)}

    tag_values = [
        np.broadcast_to(np.asarray(tag.evaluate(known), dtype=float), (n_times,))
        for tag, _, _ in groups
    ]
    top = -np.inf
    for (tag, expr, _), values in zip(groups, tag_values):
        finite = values[valid]
        if finite.size:
            top = max(top, expr.max_s_power + float(np.max(finite)))
    if not np.isfinite(top):
        raise SingularRegressorError("no valid first-stage estimates to substitute", 0.0)
    nu = int(math.floor(top)) + 1
    logger.debug(f"second stage: nu = {nu}, {len(labels)} columns, {n_rows} equations")

    rows = np.flatnonzero(valid)
    matrix = np.zeros((rows.size, n_rows, len(labels)))
    rhs = np.zeros((rows.size, n_rows))
    cache: Dict = {}
    for slot, t_index in enumerate(rows):
        grid_index = int(indices[t_index])
        at_time = {name: values[t_index] for name, values in known.items()}
        for (tag, expr, factor), values in zip(groups, tag_values):
            for e in range(n_rows):
                for term in expr.terms():
                    power = term.s_power + float(values[t_index]) - nu - e
                    value = lower_term_at(term.factors, power, bindings, grid_index, cache)
                    for cm, cc in term.coeff.items():
                        for fm, fc in factor.items():
                            inside, unknown = monomial_split(monomial_mul(cm, fm), known_names)
                            weight = float(cc * fc)
                            for name, p in inside:
                                weight *= at_time[name] ** p
                            if unknown == ONE:
                                rhs[slot, e] -= weight * value
                            else:
                                matrix[slot, e, column_of[unknown]] += weight * value
    system = regressor_from_arrays(labels, matrix, rhs, indices[rows], dt)
    theta, s_min, ok, colnorm = solve_regressor(system, opts.rcond)
    if not ok.any():
        raise SingularRegressorError(
            "second-stage regressor singular at every evaluation time",
            float(np.nanmin(s_min)) if s_min.size else 0.0,
        )
    physical = backsolve(labels, theta, colnorm)

    monomials = monomial_trajectories(labels, theta)
    return IdentResult(
        times=indices * dt,
        trajectories={name: _scatter(v, rows, n_times) for name, v in physical.items()},
        monomials={k: _scatter(v, rows, n_times) for k, v in monomials.items()},
        min_singular=_scatter(s_min, rows, n_times),
        well_conditioned=_scatter(ok, rows, n_times, False),
        model=model.name,
    )


def _scatter(values: np.ndarray, rows: np.ndarray, n: int, fill: float = np.nan) -> np.ndarray:
    out = np.full(n, fill, dtype=np.asarray(values).dtype)
    out[rows] = values
    return out


# ============================================================================
# Full pipeline
# ============================================================================


def identify_general(
    model: ModelSpec, u: SampledSignal, y: SampledSignal, opts: Optional[IdentOptions] = None
) -> IdentResult:
    """
    Identify all parameters of a grouped fractional model.

    Args:
        model: Model declaration
        u: Input signal
        y: Output signal on the same grid

    Returns:
        IdentResult with first- and second-stage parameters

    Raises:
        SingularRegressorError: Rank-deficient regressor (e.g. zero signals)
        CoherenceError: Monomial estimates inconsistent (strict mode)
        ModelError: Invalid model
    """
    opts = opts or IdentOptions()
    result = solve_theta1(model, u, y, opts)
    if model.theta2:
        indices = np.round(result.times / u.dt).astype(int)
        second = recover_theta2(model, result.trajectories, u, y, opts, indices)
        result.trajectories.update(second.trajectories)
        for name, values in second.monomials.items():
            result.monomials.setdefault(name, values)
        result.diagnostics["theta2_min_singular_value"] = second.min_singular
        result.well_conditioned = result.well_conditioned & second.well_conditioned
    for tag in model.tags:
        if tag.is_constant:
            continue
        value = float(tag.evaluate(result.estimates))
        if value < 0:
            message = f"estimated exponent {tag} = {value:.4g} is negative"
            logger.warning(message)
            result.warnings.append(message)
    check_coherence(result, opts)
    logger.info(
        f"{model.name}: "
        + ", ".join(f"{k}={v:.6g}" for k, v in sorted(result.estimates.items()))
        + f" at t={result.final_time:.4g}"
    )
    return result
