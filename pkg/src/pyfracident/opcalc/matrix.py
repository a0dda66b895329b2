"""
Operator Matrix

The homogeneous linear system satisfied by the fractional powers
(s^alpha_0, ..., s^alpha_r). Row 0 holds the grouped model equation; each
further row is the d/ds derivative of the previous one. The system has a
nontrivial solution, so its determinant vanishes, giving an equation free
of fractional powers.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Sequence, Tuple

from ..errors import ModelError
from .expr import FracOpExpr, OpExpr
from .poly import ParamPoly

if TYPE_CHECKING:  # pragma: no cover
    from ..estimators.models import ModelSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorMatrix:
    """
    Square matrix of operational expressions.

    Attributes:
        entries: Row-major tuple of rows
    """

    entries: Tuple[Tuple[OpExpr, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows:
            raise ModelError("operator matrix must have at least one row")
        size = len(rows)
        for row in rows:
            if len(row) != size:
                raise ModelError(f"operator matrix must be square, got a row of length {len(row)}")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> OpExpr:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[OpExpr, ...]:
        return self.entries[i]

    def det(self) -> OpExpr:
        return det(self)


def det(P: OperatorMatrix) -> OpExpr:
    """
    Determinant by cofactor expansion along the first row.

    Exact: coefficients are rational polynomials, so cancellations are kept.

    Example:
        >>> m = OperatorMatrix(((OpExpr.signal("y"),),))
        >>> det(m).render()
        '1*y'
    """
    return _det(P.entries)


def _det(rows: Sequence[Sequence[OpExpr]]) -> OpExpr:
    size = len(rows)
    if size == 1:
        return rows[0][0]
    if size == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = OpExpr.zero()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        cofactor = entry * _det(minor)
        total = total + cofactor if j % 2 == 0 else total - cofactor
    return total


def build_operator_matrix(equation: FracOpExpr) -> Tuple[OperatorMatrix, List[ParamPoly]]:
    """
    Operator matrix whose row i holds the slots of the i-th d/ds derivative.

    Args:
        equation: Pre-processed equation sum_j s^tag_j E_j = 0

    Returns:
        (matrix, tags) with one column per tag

    Raises:
        ModelError: If the equation is zero
    """
    tags = equation.tags
    if not tags:
        raise ModelError("cannot build an operator matrix from a zero equation")
    rows = []
    current = equation
    for _ in range(len(tags)):
        rows.append(tuple(current.slot(tag) for tag in tags))
        current = current.dds()
    return OperatorMatrix(tuple(rows)), tags


def build_P(model: "ModelSpec") -> Tuple[OperatorMatrix, List[ParamPoly]]:
    """
    Operator matrix of a grouped homogeneous model.

    Row 0 holds the group expressions (common factors dropped); entry
    (i, j) follows p_ij = d/ds p_(i-1)j + alpha_j s^-1 p_(i-1)j.

    Args:
        model: Model with r + 1 exponent groups

    Returns:
        ((r+1)x(r+1) matrix, exponent tags in column order)

    Raises:
        ModelError: For an empty model or a group with zero expression
    """
    groups = list(model.groups)
    if not groups:
        raise ModelError("model has no exponent groups")
    for index, group in enumerate(groups):
        if group.expr.is_zero:
            raise ModelError(f"group {index} (exponent {group.exponent}) has a zero expression")
    tags = [group.exponent for group in groups]
    rows = [tuple(group.expr for group in groups)]
    for _ in range(1, len(groups)):
        previous = rows[-1]
        rows.append(
            tuple(entry.dds() + entry.shift(-1).scale(tag) for entry, tag in zip(previous, tags))
        )
    size = len(groups)
    logger.debug(f"built {size}x{size} operator matrix for tags {[str(t) for t in tags]}")
    return OperatorMatrix(tuple(rows)), tags
