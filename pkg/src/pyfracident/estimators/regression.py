"""
Regression

Builds regressor systems from lowered equations, solves them by batched
singular-value decomposition over the evaluation-time sweep, and maps
monomial estimates back to physical parameters. Overparametrized fits can
be refined as a nonlinear problem in the parameters themselves.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from ..errors import ModelError
from ..opcalc import ONE, Monomial, monomial_degree, monomial_str, monomial_symbols
from ..signals import SampledSignal
from .models import IdentOptions, RegressorSystem

logger = logging.getLogger(__name__)


def evaluation_indices(n: int, dt: float, opts: IdentOptions) -> np.ndarray:
    """
    Grid indices of the evaluation sweep from t_min to the horizon.

    Args:
        n: Number of samples
        dt: Time step
        opts: Options carrying t_min and n_times

    Returns:
        Sorted unique indices, always ending at the last sample
    """
    horizon = (n - 1) * dt
    t_min = 0.1 * horizon if opts.t_min is None else float(opts.t_min)
    if t_min > horizon:
        raise ValueError(f"t_min {t_min} exceeds the horizon {horizon}")
    start = max(1, int(round(t_min / dt)))
    indices = np.round(np.linspace(start, n - 1, int(opts.n_times))).astype(int)
    return np.unique(indices)


def unknown_labels(equation: Mapping[Monomial, SampledSignal]) -> List[Monomial]:
    """Non-constant monomials ordered by degree, then name."""
    return sorted((m for m in equation if m != ONE), key=lambda m: (monomial_degree(m), m))


def _row_scaled(matrix: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # one scale per stacked equation, constant over the sweep
    scale = np.max(np.abs(matrix), axis=(0, 2))
    scale = np.maximum(scale, np.max(np.abs(rhs), axis=0))
    scale = np.where(scale > 0, scale, 1.0)
    return matrix / scale[None, :, None], rhs / scale[None, :]


def build_regressor(
    labels: Sequence[Monomial],
    equations: Sequence[Mapping[Monomial, SampledSignal]],
    indices: np.ndarray,
    dt: float,
) -> RegressorSystem:
    """
    Regressor from lowered equations.

    The constant monomial of each equation moves to the right-hand side.

    Raises:
        ModelError: If an equation has no constant monomial
    """
    columns = []
    rhs = []
    for equation in equations:
        if ONE not in equation:
            raise ModelError(
                "identification equation has no parameter-free term; "
                "fix one coefficient to normalize the model"
            )
        columns.append([_sample(equation.get(label), indices) for label in labels])
        rhs.append(-equation[ONE].values[indices])
    if not labels:
        raise ModelError("identification equation has no unknown monomials")
    matrix = np.array(columns).transpose(2, 0, 1)
    return regressor_from_arrays(labels, matrix, np.array(rhs).T, indices, dt)


def _sample(signal: Optional[SampledSignal], indices: np.ndarray) -> np.ndarray:
    if signal is None:
        return np.zeros(len(indices))
    return signal.values[indices]


def regressor_from_arrays(
    labels: Sequence[Monomial],
    matrix: np.ndarray,
    rhs: np.ndarray,
    indices: np.ndarray,
    dt: float,
) -> RegressorSystem:
    """Row-scale raw (times, equations, columns) arrays into a RegressorSystem."""
    matrix, rhs = _row_scaled(np.asarray(matrix, dtype=float), np.asarray(rhs, dtype=float))
    indices = np.asarray(indices)
    return RegressorSystem(tuple(labels), matrix, rhs, indices * dt, indices)


def solve_batched(
    matrix: np.ndarray, rhs: np.ndarray, rcond: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Least squares at every evaluation time by SVD.

    Columns are equilibrated to unit norm first; the reported singular
    values are those of the equilibrated matrix.

    Args:
        matrix: (times, equations, columns)
        rhs: (times, equations)
        rcond: Well-conditioned means s_min > rcond * s_max > 0

    Returns:
        (solution (times, columns), s_min (times,), well-conditioned mask,
        column norms (times, columns)); ill-conditioned solutions are NaN
    """
    colnorm = np.linalg.norm(matrix, axis=1)
    safe = np.where(colnorm > 0, colnorm, 1.0)
    scaled = matrix / safe[:, None, :]
    u, s, vt = np.linalg.svd(scaled, full_matrices=False)
    s_max = s[:, 0]
    s_min = s[:, -1]
    ok = (s_max > 0) & (s_min > rcond * s_max)
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse = np.where(ok[:, None], 1.0 / s, 0.0)
    coef = np.einsum("tmn,tm->tn", u, rhs) * inverse
    solution = np.einsum("tnk,tn->tk", vt, coef) / safe
    solution[~ok] = np.nan
    return solution, s_min, ok, colnorm


def solve_regressor(system: RegressorSystem, rcond: float):
    """solve_batched on a RegressorSystem."""
    return solve_batched(system.matrix, system.rhs, rcond)


def backsolve(
    labels: Sequence[Monomial],
    theta: np.ndarray,
    weights: np.ndarray,
    known: Optional[Mapping[str, np.ndarray]] = None,
) -> Dict[str, np.ndarray]:
    """
    Physical parameters from overparametrized monomial estimates.

    Each symbol is taken from the lowest-degree monomial in which it appears
    linearly and whose other symbols are already resolved. Ties are broken
    per time by the candidate with the largest |product of others| times
    column norm.

    Args:
        labels: Column monomials
        theta: Estimates (times, columns)
        weights: Column norms (times, columns)
        known: Values already fixed per time

    Returns:
        Symbol -> estimate per time (known symbols excluded)

    Raises:
        ModelError: If some symbol cannot be isolated
    """
    resolved: Dict[str, np.ndarray] = dict(known or {})
    symbols = set()
    for mono in labels:
        symbols.update(monomial_symbols(mono))
    pending = sorted(symbols - set(resolved))
    n_times = theta.shape[0]
    progress = True
    while pending and progress:
        progress = False
        for symbol in list(pending):
            candidates = []
            for column, mono in enumerate(labels):
                powers = dict(mono)
                if powers.get(symbol) != 1:
                    continue
                others = [(name, power) for name, power in mono if name != symbol]
                if all(name in resolved for name, _ in others):
                    candidates.append((monomial_degree(mono), column, others))
            if not candidates:
                continue
            lowest = min(c[0] for c in candidates)
            values, scores = [], []
            for degree, column, others in candidates:
                if degree != lowest:
                    continue
                product = np.ones(n_times)
                for name, power in others:
                    product = product * resolved[name] ** power
                with np.errstate(divide="ignore", invalid="ignore"):
                    values.append(theta[:, column] / product)
                scores.append(np.nan_to_num(np.abs(product) * weights[:, column], nan=-1.0))
            if len(values) == 1:
                resolved[symbol] = values[0]
            else:
                pick = np.argmax(np.stack(scores), axis=0)
                resolved[symbol] = np.stack(values)[pick, np.arange(n_times)]
            pending.remove(symbol)
            progress = True
    if pending:
        raise ModelError(f"cannot isolate parameters {', '.join(pending)} from the monomials")
    return {name: value for name, value in resolved.items() if not known or name not in known}


def is_overparametrized(labels: Sequence[Monomial]) -> bool:
    """True when the monomials outnumber the parameters they are built from."""
    symbols = set()
    for mono in labels:
        symbols.update(monomial_symbols(mono))
    return len(labels) > len(symbols)


def _monomial_values(labels: Sequence[Monomial], symbols: Sequence[str], x: np.ndarray):
    at = dict(zip(symbols, x))
    return np.array([np.prod([at[name] ** p for name, p in mono]) for mono in labels])


def _monomial_jacobian(labels: Sequence[Monomial], symbols: Sequence[str], x: np.ndarray):
    at = dict(zip(symbols, x))
    jac = np.zeros((len(labels), len(symbols)))
    for row, mono in enumerate(labels):
        for col, symbol in enumerate(symbols):
            power = dict(mono).get(symbol, 0)
            if power == 0:
                continue
            rest = np.prod([at[name] ** p for name, p in mono if name != symbol])
            jac[row, col] = power * at[symbol] ** (power - 1) * rest
    return jac


def refine_physical(
    labels: Sequence[Monomial],
    matrix: np.ndarray,
    rhs: np.ndarray,
    start: Mapping[str, np.ndarray],
) -> Dict[str, np.ndarray]:
    """
    Solve the stacked equations as a nonlinear problem in the parameters.

    Every monomial column is replaced by the product of its parameters and
    the residual is minimized per time with scipy's trust-region solver,
    starting from the back-solved estimates. Times without a finite start
    stay NaN.

    Args:
        labels: Column monomials
        matrix: (times, equations, columns)
        rhs: (times, equations)
        start: Back-solved parameters per time

    Returns:
        Refined parameter trajectories
    """
    symbols = sorted(start)
    n_times = matrix.shape[0]
    refined = {name: np.full(n_times, np.nan) for name in symbols}
    failed = 0
    for t in range(n_times):
        x0 = np.array([start[name][t] for name in symbols], dtype=float)
        if not np.all(np.isfinite(x0)):
            continue
        A, b = matrix[t], rhs[t]
        fit = least_squares(
            lambda x: A @ _monomial_values(labels, symbols, x) - b,
            x0,
            jac=lambda x: A @ _monomial_jacobian(labels, symbols, x),
            method="trf",
            x_scale="jac",
            xtol=1e-14,
            ftol=1e-14,
            gtol=1e-14,
        )
        if not fit.success:
            failed += 1
            fit_x = x0
        else:
            fit_x = fit.x
        for name, value in zip(symbols, fit_x):
            refined[name][t] = value
    if failed:
        logger.warning(f"nonlinear refinement kept the back-solved values at {failed} times")
    return refined


def coherence_residual(
    labels: Sequence[Monomial],
    theta: np.ndarray,
    physical: Mapping[str, np.ndarray],
    matrix: np.ndarray,
    rhs: np.ndarray,
) -> np.ndarray:
    """
    Disagreement between monomial estimates and their physical products.

    Measured in equation space: the norm of matrix @ (theta - products),
    the change in the stacked equations when the free monomial estimates
    are replaced by products of the physical parameters, relative to the
    right-hand-side norm. Collinear columns whose errors cancel in the
    equations do not inflate it.
    """
    n_times = theta.shape[0]
    products = np.ones((n_times, len(labels)))
    for column, mono in enumerate(labels):
        for name, power in mono:
            products[:, column] = products[:, column] * physical[name] ** power
    with np.errstate(invalid="ignore"):
        mismatch = np.einsum("tmk,tk->tm", matrix, theta - products)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.linalg.norm(mismatch, axis=1) / np.linalg.norm(rhs, axis=1)
    out[~np.isfinite(theta).all(axis=1)] = np.nan
    return out


def monomial_trajectories(labels: Sequence[Monomial], theta: np.ndarray) -> Dict[str, np.ndarray]:
    return {monomial_str(m): theta[:, i] for i, m in enumerate(labels)}
