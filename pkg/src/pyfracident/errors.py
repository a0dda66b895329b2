"""
Exception Hierarchy

Errors raised by the identification toolkit. Plain argument mistakes raise
ValueError directly; everything domain-specific derives from FracIdentError.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

from typing import List, Optional


class FracIdentError(Exception):
    """Root of all toolkit errors."""


class GridMismatchError(FracIdentError, ValueError):
    """Signals entering one operation do not share step and length."""


class ModelError(FracIdentError, ValueError):
    """Invalid or degenerate model, expression, or missing initial data."""


class SingularRegressorError(FracIdentError):
    """
    The regressor is singular or ill-conditioned at every evaluation time.

    Attributes:
        smallest_singular_value: Smallest singular value seen (0 for zero signals)
    """

    def __init__(self, message: str, smallest_singular_value: float = 0.0):
        super().__init__(message)
        self.smallest_singular_value = smallest_singular_value


class CoherenceError(FracIdentError):
    """
    Overparametrized monomial estimates disagree with the physical back-solve.

    Attributes:
        residual: Coherence residual at the final evaluation time
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class ConfigError(FracIdentError, ValueError):
    """
    A run configuration failed validation.

    Attributes:
        issues: Validation issues that caused the failure
    """

    def __init__(self, message: str, issues: Optional[List] = None):
        super().__init__(message)
        self.issues = list(issues or [])
