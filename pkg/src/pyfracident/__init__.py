"""
PyFracIdent - identification of fractional-order models from sampled signals.

Recovers coefficients and fractional differentiation orders of linear
fractional models by operational-calculus elimination: every unknown comes
out of linear equations whose entries are convolutions and integrals of
the measured signals.
"""

__version__ = "0.1.0"

from .errors import (
    CoherenceError,
    ConfigError,
    FracIdentError,
    GridMismatchError,
    ModelError,
    SingularRegressorError,
)
from .estimators import (
    IdentOptions,
    IdentResult,
    ModelSpec,
    identify_diffusion_wave,
    identify_general,
    identify_voigt_hom,
    identify_voigt_inhom_caputo,
    identify_voigt_inhom_rl,
    recover_theta2,
)
from .signals import SampledSignal

__all__ = [
    # Errors
    "FracIdentError",
    "GridMismatchError",
    "ModelError",
    "SingularRegressorError",
    "CoherenceError",
    "ConfigError",
    # Core types
    "SampledSignal",
    "ModelSpec",
    "IdentOptions",
    "IdentResult",
    # Pipelines
    "identify_voigt_hom",
    "identify_voigt_inhom_rl",
    "identify_voigt_inhom_caputo",
    "identify_general",
    "recover_theta2",
    "identify_diffusion_wave",
]
