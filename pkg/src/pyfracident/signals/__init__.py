"""Uniform-grid signals and the numeric primitives of operational lowering."""

from .models import SampledSignal, common_grid, grid_size
from .ops import (
    add_white_noise,
    convolve,
    impulse,
    kernel,
    repeated_integral,
    t_weight,
)

__all__ = [
    "SampledSignal",
    "common_grid",
    "grid_size",
    "convolve",
    "repeated_integral",
    "t_weight",
    "kernel",
    "impulse",
    "add_white_noise",
]
