"""Gruenwald-Letnikov fractional integration and differentiation."""

from .grunwald import frac_derivative, frac_integral, frac_integral_at, gl_weights
from .models import Convention, FracOrder, GLWeights

__all__ = [
    "Convention",
    "FracOrder",
    "GLWeights",
    "gl_weights",
    "frac_integral",
    "frac_integral_at",
    "frac_derivative",
]
