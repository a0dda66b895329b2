"""Operational calculus: symbolic expressions, operator matrices, lowering to signals."""

from .expr import FracOpExpr, OpExpr, OpTerm, sorted_tags
from .lowering import (
    check_bindings,
    fractional_kernel,
    generate_equations,
    lower,
    lower_shifted,
    lower_shifted_at,
    lower_term_at,
    normalize,
)
from .matrix import OperatorMatrix, build_operator_matrix, build_P, det
from .poly import (
    ONE,
    Monomial,
    ParamPoly,
    make_monomial,
    monomial_degree,
    monomial_mul,
    monomial_split,
    monomial_str,
    monomial_symbols,
)

__all__ = [
    "ParamPoly",
    "Monomial",
    "ONE",
    "make_monomial",
    "monomial_mul",
    "monomial_degree",
    "monomial_symbols",
    "monomial_split",
    "monomial_str",
    "OpTerm",
    "OpExpr",
    "FracOpExpr",
    "sorted_tags",
    "OperatorMatrix",
    "build_P",
    "build_operator_matrix",
    "det",
    "normalize",
    "lower",
    "lower_shifted",
    "lower_shifted_at",
    "lower_term_at",
    "fractional_kernel",
    "generate_equations",
    "check_bindings",
]
