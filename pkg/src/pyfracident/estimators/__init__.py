"""Identification pipelines: Voigt cases, general grouped models, diffusion-wave."""

from .diffusion import identify_diffusion_wave
from .general import (
    augmented_groups,
    check_coherence,
    identification_equation,
    identify_general,
    initial_value_terms,
    lowered_equations,
    preprocess,
    recover_theta2,
    solve_system,
    solve_theta1,
)
from .models import (
    Group,
    IdentOptions,
    IdentResult,
    InitRegime,
    ModelSpec,
    RegressorSystem,
    merge_groups,
)
from .presets import (
    PRESETS,
    diffusion_wave_model,
    first_order_model,
    load_model_file,
    model_from_dict,
    model_to_dict,
    voigt_model,
)
from .regression import (
    backsolve,
    build_regressor,
    coherence_residual,
    evaluation_indices,
    is_overparametrized,
    refine_physical,
    solve_batched,
    solve_regressor,
)
from .voigt import (
    identify_voigt_hom,
    identify_voigt_inhom_caputo,
    identify_voigt_inhom_rl,
    voigt_hom_equations,
)

__all__ = [
    # Models
    "Group",
    "ModelSpec",
    "InitRegime",
    "IdentOptions",
    "RegressorSystem",
    "IdentResult",
    "merge_groups",
    # Presets
    "PRESETS",
    "voigt_model",
    "first_order_model",
    "diffusion_wave_model",
    "model_from_dict",
    "model_to_dict",
    "load_model_file",
    # Regression
    "evaluation_indices",
    "is_overparametrized",
    "build_regressor",
    "solve_batched",
    "solve_regressor",
    "backsolve",
    "refine_physical",
    "coherence_residual",
    # General pipeline
    "initial_value_terms",
    "augmented_groups",
    "preprocess",
    "identification_equation",
    "lowered_equations",
    "solve_system",
    "solve_theta1",
    "check_coherence",
    "recover_theta2",
    "identify_general",
    # Voigt
    "voigt_hom_equations",
    "identify_voigt_hom",
    "identify_voigt_inhom_rl",
    "identify_voigt_inhom_caputo",
    # Diffusion-wave
    "identify_diffusion_wave",
]
