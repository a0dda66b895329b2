"""
Estimator Data Models

Model declarations, solver options, regressor systems and identification
results.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

import numpy as np

from ..errors import ModelError, SingularRegressorError
from ..fracops import Convention
from ..opcalc import Monomial, OpExpr, ParamPoly, sorted_tags

logger = logging.getLogger(__name__)


class InitRegime(str, Enum):
    """How initial values of the model are treated."""

    HOMOGENEOUS = "homogeneous"
    ELIMINATE = "eliminate"
    IDENTIFY = "identify"

    @classmethod
    def parse(cls, value: Union["InitRegime", str]) -> "InitRegime":
        """Accept enum values and the mode names "eliminate-init"/"identify-init"."""
        if isinstance(value, InitRegime):
            return value
        text = str(value).strip().lower()
        if text.endswith("-init"):
            text = text[: -len("-init")]
        return cls(text)


# ============================================================================
# Model declaration
# ============================================================================


@dataclass(frozen=True)
class Group:
    """
    One exponent group factor * s^exponent * expr of the model equation.

    Attributes:
        exponent: Linear parameter polynomial or known constant
        expr: Laurent polynomial in s over the input/output symbols
        factor: Common factor of the group; symbols that only occur in
            factors are recovered in the second stage
    """

    exponent: ParamPoly
    expr: OpExpr
    factor: ParamPoly = field(default_factory=ParamPoly.one)

    def __post_init__(self):
        exponent = ParamPoly.coerce(self.exponent)
        factor = ParamPoly.coerce(self.factor)
        if exponent.degree > 1:
            raise ModelError(f"exponent {exponent} must be linear in the parameters")
        if factor.is_zero:
            raise ModelError(f"group with exponent {exponent} has a zero common factor")
        object.__setattr__(self, "exponent", exponent)
        object.__setattr__(self, "factor", factor)

    @property
    def is_known(self) -> bool:
        return self.exponent.is_constant


def merge_groups(groups) -> Tuple[Group, ...]:
    """
    Canonical grouping.

    Exponents differing by an integer are folded together (s^(a+n) E =
    s^a (s^n E)), so every canonical exponent has a constant part in [0, 1)
    and known integer orders land in the exponent-free group.

    Raises:
        ModelError: If folded groups carry different factors or cancel out
    """
    merged: Dict[ParamPoly, Group] = {}
    for group in groups:
        offset = math.floor(group.exponent.constant_term)
        tag = group.exponent - offset
        expr = group.expr.shift(offset)
        if tag in merged:
            existing = merged[tag]
            if existing.factor != group.factor:
                raise ModelError(
                    f"groups with exponent {tag} (up to an integer) carry different factors "
                    f"{existing.factor} and {group.factor}"
                )
            expr = existing.expr + expr
        merged[tag] = Group(tag, expr, group.factor)
    for tag, group in merged.items():
        if group.expr.is_zero:
            raise ModelError(f"group with exponent {tag} has a zero expression")
    return tuple(merged[tag] for tag in sorted_tags(merged))


@dataclass(frozen=True)
class ModelSpec:
    """
    Linear fractional model sum_j factor_j s^alpha_j expr_j = 0.

    Attributes:
        groups: Exponent groups (folded and sorted on construction)
        convention: Derivative definition the data follow
        regime: Initial-value treatment
        order_bound: Integer bound nu on all orders (inhomogeneous regimes)
        input_id: Signal symbol bound to the input u
        output_id: Signal symbol bound to the output y
        name: Label used in logs and reports

    Example:
        >>> from pyfracident.estimators import voigt_model
        >>> sorted(voigt_model().theta2)
        ['E1']
    """

    groups: Tuple[Group, ...]
    convention: Convention = Convention.RL
    regime: InitRegime = InitRegime.HOMOGENEOUS
    order_bound: Optional[int] = None
    input_id: str = "u"
    output_id: str = "y"
    name: str = "custom"

    def __post_init__(self):
        if not self.groups:
            raise ModelError("model has no exponent groups")
        for group in self.groups:
            if group.expr.is_zero:
                raise ModelError(f"group with exponent {group.exponent} has a zero expression")
        groups = merge_groups(self.groups)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "convention", Convention(self.convention))
        object.__setattr__(self, "regime", InitRegime.parse(self.regime))
        if self.input_id == self.output_id:
            raise ModelError("input and output signals need distinct ids")
        if not any(group.is_known for group in groups):
            raise ModelError("at least one exponent must be known to anchor the orders")
        allowed = {self.input_id, self.output_id}
        for group in groups:
            stray = group.expr.signal_ids - allowed
            if stray:
                raise ModelError(f"unknown signals in model: {', '.join(sorted(stray))}")
        if self.regime is not InitRegime.HOMOGENEOUS:
            bound = self.order_bound
            if bound is None or int(bound) != bound or bound < 1:
                raise ModelError(
                    f"regime {self.regime.value} needs an integer order bound >= 1, "
                    f"got {self.order_bound}"
                )
            object.__setattr__(self, "order_bound", int(self.order_bound))

    @property
    def r(self) -> int:
        """Number of groups minus one."""
        return len(self.groups) - 1

    @property
    def tags(self) -> List[ParamPoly]:
        return [group.exponent for group in self.groups]

    @property
    def theta1(self) -> FrozenSet[str]:
        """Unknowns that survive the determinant elimination."""
        out = set()
        for group in self.groups:
            out.update(group.exponent.symbols)
            out.update(group.expr.symbols)
        return frozenset(out)

    @property
    def theta2(self) -> FrozenSet[str]:
        """Unknowns appearing only in common factors."""
        out = set()
        for group in self.groups:
            out.update(group.factor.symbols)
        return frozenset(out - self.theta1)

    @property
    def theta(self) -> FrozenSet[str]:
        return self.theta1 | self.theta2

    def with_regime(
        self, regime: Union[InitRegime, str], order_bound: Optional[int] = None
    ) -> "ModelSpec":
        return ModelSpec(
            self.groups,
            self.convention,
            InitRegime.parse(regime),
            self.order_bound if order_bound is None else order_bound,
            self.input_id,
            self.output_id,
            self.name,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "convention": self.convention.value,
            "regime": self.regime.value,
            "order_bound": self.order_bound,
            "signals": {"input": self.input_id, "output": self.output_id},
            "groups": [
                {
                    "exponent": str(g.exponent),
                    "factor": str(g.factor),
                    "expr": g.expr.render(),
                }
                for g in self.groups
            ],
        }


# ============================================================================
# Solver options
# ============================================================================


@dataclass(frozen=True)
class IdentOptions:
    """
    Identification settings.

    Attributes:
        n_extra: Extra integrated equations (None = unknown monomials + 2)
        theta2_extra: Equations beyond the column count in the second stage
        t_min: Start of the evaluation sweep (None = 10% of the horizon)
        n_times: Number of evaluation times
        rcond: Relative singular-value threshold for a well-conditioned solve
        coherence_tol: Largest acceptable monomial coherence residual
        strict: Raise CoherenceError instead of warning
        refine: Re-solve overparametrized fits as a nonlinear problem in the
            physical parameters, starting from the monomial back-solve
    """

    n_extra: Optional[int] = None
    theta2_extra: int = 2
    t_min: Optional[float] = None
    n_times: int = 200
    rcond: float = 1e-10
    coherence_tol: float = 0.05
    strict: bool = True
    refine: bool = True

    def __post_init__(self):
        if self.n_extra is not None and (int(self.n_extra) != self.n_extra or self.n_extra < 0):
            raise ValueError(f"n_extra must be a non-negative integer, got {self.n_extra}")
        if int(self.theta2_extra) != self.theta2_extra or self.theta2_extra < 0:
            raise ValueError(
                f"theta2_extra must be a non-negative integer, got {self.theta2_extra}"
            )
        if self.t_min is not None and self.t_min < 0:
            raise ValueError(f"t_min must be >= 0, got {self.t_min}")
        if int(self.n_times) != self.n_times or self.n_times < 1:
            raise ValueError(f"n_times must be a positive integer, got {self.n_times}")
        if not self.rcond > 0:
            raise ValueError(f"rcond must be positive, got {self.rcond}")
        if not self.coherence_tol > 0:
            raise ValueError(f"coherence_tol must be positive, got {self.coherence_tol}")


# ============================================================================
# Regressor and results
# ============================================================================


@dataclass(frozen=True, eq=False)
class RegressorSystem:
    """
    Stacked linear equations over parameter monomials, per evaluation time.

    Attributes:
        labels: Column monomials
        matrix: Array (times, equations, columns), rows already scaled
        rhs: Array (times, equations)
        times: Evaluation times
        indices: Grid indices of the evaluation times
    """

    labels: Tuple[Monomial, ...]
    matrix: np.ndarray
    rhs: np.ndarray
    times: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        if self.matrix.ndim != 3:
            raise ValueError(f"matrix must be 3-dimensional, got shape {self.matrix.shape}")
        n_times, n_eq, n_cols = self.matrix.shape
        if n_cols != len(self.labels):
            raise ValueError(f"{n_cols} columns but {len(self.labels)} labels")
        if self.rhs.shape != (n_times, n_eq) or self.times.shape != (n_times,):
            raise ValueError("rhs/times shapes do not match the matrix")
        if n_eq < n_cols:
            raise ModelError(f"{n_eq} equations cannot determine {n_cols} unknown monomials")

    @property
    def n_equations(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def n_columns(self) -> int:
        return int(self.matrix.shape[2])

    def stacked(self) -> Tuple[np.ndarray, np.ndarray]:
        """Flatten to rows = times x equations."""
        n_times, n_eq, n_cols = self.matrix.shape
        return self.matrix.reshape(n_times * n_eq, n_cols), self.rhs.reshape(n_times * n_eq)


@dataclass
class IdentResult:
    """
    Estimate trajectories over the evaluation-time sweep.

    Attributes:
        times: Evaluation times
        trajectories: Physical parameter -> estimate per time
        monomials: Monomial label -> raw least-squares estimate per time
        coherence: Monomial coherence residual per time
        min_singular: Smallest singular value of the scaled regressor per time
        well_conditioned: Mask of times with a trustworthy solve
        diagnostics: Further per-time columns (second-stage conditioning etc.)
        warnings: Flagged, non-fatal findings
        model: Model name
    """

    times: np.ndarray
    trajectories: Dict[str, np.ndarray]
    monomials: Dict[str, np.ndarray] = field(default_factory=dict)
    coherence: Optional[np.ndarray] = None
    min_singular: Optional[np.ndarray] = None
    well_conditioned: Optional[np.ndarray] = None
    diagnostics: Dict[str, np.ndarray] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    model: str = ""

    def _valid(self) -> np.ndarray:
        valid = np.ones(self.times.shape, dtype=bool)
        if self.well_conditioned is not None:
            valid &= self.well_conditioned
        for values in self.trajectories.values():
            valid &= np.isfinite(values)
        return valid

    @property
    def final_index(self) -> int:
        """
        Index of the last well-conditioned time with finite estimates.

        Raises:
            SingularRegressorError: If no such time exists
        """
        valid = np.flatnonzero(self._valid())
        if valid.size == 0:
            smin = self.smallest_singular_value_overall
            raise SingularRegressorError("no well-conditioned evaluation time", smin)
        return int(valid[-1])

    @property
    def final_time(self) -> float:
        return float(self.times[self.final_index])

    @property
    def estimates(self) -> Dict[str, float]:
        i = self.final_index
        return {name: float(values[i]) for name, values in self.trajectories.items()}

    @property
    def coherence_residual(self) -> float:
        if self.coherence is None:
            return 0.0
        return float(self.coherence[self.final_index])

    @property
    def smallest_singular_value(self) -> float:
        if self.min_singular is None:
            return float("nan")
        return float(self.min_singular[self.final_index])

    @property
    def smallest_singular_value_overall(self) -> float:
        if self.min_singular is None or self.min_singular.size == 0:
            return 0.0
        if not np.any(np.isfinite(self.min_singular)):
            return 0.0
        return float(np.nanmin(self.min_singular))

    def trajectory(self, name: str) -> np.ndarray:
        if name not in self.trajectories:
            raise KeyError(f"no estimate named {name!r}; have {sorted(self.trajectories)}")
        return self.trajectories[name]

    def renamed(self, mapping: Mapping[str, str]) -> "IdentResult":
        """Copy with parameter and monomial names replaced."""

        def rename_label(label: str) -> str:
            return "*".join(
                _rename_factor(part, mapping) for part in label.split("*")
            )

        return IdentResult(
            times=self.times,
            trajectories={mapping.get(k, k): v for k, v in self.trajectories.items()},
            monomials={rename_label(k): v for k, v in self.monomials.items()},
            coherence=self.coherence,
            min_singular=self.min_singular,
            well_conditioned=self.well_conditioned,
            diagnostics=dict(self.diagnostics),
            warnings=list(self.warnings),
            model=self.model,
        )

    def columns(self) -> Tuple[List[str], np.ndarray]:
        """Column names and a (times, columns) table for CSV output."""
        names = ["t"]
        data = [self.times]
        for name in sorted(self.trajectories):
            names.append(name)
            data.append(self.trajectories[name])
        for name in sorted(self.monomials):
            if name in self.trajectories:
                continue
            names.append(f"theta[{name}]")
            data.append(self.monomials[name])
        if self.coherence is not None:
            names.append("coherence")
            data.append(self.coherence)
        for name in sorted(self.diagnostics):
            names.append(name)
            data.append(self.diagnostics[name])
        if self.min_singular is not None:
            names.append("min_singular_value")
            data.append(self.min_singular)
        return names, np.column_stack(data)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "final_time": self.final_time,
            "estimates": self.estimates,
            "coherence_residual": self.coherence_residual,
            "smallest_singular_value": self.smallest_singular_value,
            "warnings": list(self.warnings),
        }


def _rename_factor(part: str, mapping: Mapping[str, str]) -> str:
    name, sep, power = part.partition("^")
    return mapping.get(name, name) + sep + power
