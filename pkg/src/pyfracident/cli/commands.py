"""
Command Implementations

The work behind each subcommand of the `fracident` tool. Commands take a
validated RunConfig and an output directory and return what they wrote.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from pathlib import Path
from typing import Dict, Tuple

from ..config import RunConfig
from ..errors import ModelError
from ..estimators import (
    IdentResult,
    InitRegime,
    ModelSpec,
    diffusion_wave_model,
    first_order_model,
    identification_equation,
    identify_diffusion_wave,
    identify_general,
    identify_voigt_hom,
    identify_voigt_inhom_caputo,
    identify_voigt_inhom_rl,
    load_model_file,
    voigt_model,
)
from ..fracops import Convention
from ..io import (
    read_signal_csv,
    stale_files,
    write_manifest,
    write_result_csv,
    write_signal_csv,
)
from ..signals import SampledSignal, add_white_noise
from ..simulate import (
    VoigtParams,
    WaveParams,
    diffusion_wave_forward,
    first_order_step,
    test_signal,
    voigt_forward,
)

logger = logging.getLogger(__name__)

INPUT_FILE = "input.csv"
OUTPUT_FILE = "output.csv"
MANIFEST_FILE = "manifest.yaml"
RESULT_FILE = "result.csv"


# ============================================================================
# Helpers
# ============================================================================


def build_model(config: RunConfig) -> ModelSpec:
    """ModelSpec selected by the configuration."""
    if config.model == "voigt":
        return voigt_model(config.convention, config.regime, config.order_bound)
    if config.model == "first-order":
        return first_order_model()
    if config.model == "diffusion-wave":
        return diffusion_wave_model()
    return load_model_file(config.model_file)


def true_parameters(config: RunConfig) -> Dict[str, float]:
    """Parameters used by `simulate` for the configured model."""
    if config.model == "voigt":
        params = VoigtParams(config.E0, config.E1, config.alpha, config.convention, config.init)
        return params.to_dict()
    if config.model == "first-order":
        return {"a": float(config.pole), "b": float(config.gain)}
    if config.model == "diffusion-wave":
        return WaveParams(config.wave_alpha, config.ratio).to_dict()
    raise ModelError("simulate supports the voigt, first-order and diffusion-wave models")


def generate_signals(config: RunConfig) -> Tuple[SampledSignal, SampledSignal]:
    """
    Noise-free input/output pair for the configured model.

    Raises:
        ModelError: For custom models
        ValueError: For an invalid grid
    """
    dt = config.dt
    if config.model == "voigt":
        params = VoigtParams(config.E0, config.E1, config.alpha, config.convention, config.init)
        u = test_signal(config.signal, config.horizon, dt, seed=config.seed)
        if params.convention is Convention.CAPUTO and params.init:
            u = u + params.init
        return u, voigt_forward(u, params)
    if config.model == "first-order":
        return first_order_step(config.horizon, dt, config.gain, config.pole)
    if config.model == "diffusion-wave":
        h = test_signal(config.signal, config.horizon, dt, seed=config.seed)
        return h, diffusion_wave_forward(h, WaveParams(config.wave_alpha, config.ratio))
    raise ModelError("simulate supports the voigt, first-order and diffusion-wave models")


# ============================================================================
# Commands
# ============================================================================


def cmd_simulate(config: RunConfig, out_dir: Path) -> Dict[str, Path]:
    """
    Write input.csv, output.csv and manifest.yaml.

    The manifest records the true parameters, grid, noise settings and the
    SHA-256 checksums of both CSV files. Noise on the input uses `seed`,
    on the output `seed + 1`.
    """
    out_dir = Path(out_dir)
    u, y = generate_signals(config)
    if config.snr_db is not None:
        u = add_white_noise(u, config.snr_db, config.seed)
        y = add_white_noise(y, config.snr_db, config.seed + 1)
    paths = {
        "input": write_signal_csv(out_dir / INPUT_FILE, u),
        "output": write_signal_csv(out_dir / OUTPUT_FILE, y),
    }
    settings = {
        "model": config.model,
        "parameters": true_parameters(config),
        "signal": config.signal if config.model != "first-order" else "step",
        "horizon": float(config.horizon),
        "samples": int(config.samples),
        "snr_db": None if config.snr_db is None else float(config.snr_db),
        "seed": int(config.seed),
    }
    paths["manifest"] = write_manifest(out_dir / MANIFEST_FILE, settings, paths)
    logger.info(f"simulated {config.model}: {u.n} samples written to {out_dir}")
    return paths


def run_identification(config: RunConfig, u: SampledSignal, y: SampledSignal) -> IdentResult:
    """Dispatch to the estimator matching the configured model and regime."""
    opts = config.ident_options()
    if config.model == "voigt":
        regime = InitRegime.parse(config.regime)
        if regime is InitRegime.HOMOGENEOUS:
            return identify_voigt_hom(u, y, opts)
        if Convention(config.convention) is Convention.CAPUTO:
            return identify_voigt_inhom_caputo(u, y, regime, opts)
        return identify_voigt_inhom_rl(u, y, regime, opts)
    if config.model == "diffusion-wave":
        return identify_diffusion_wave(u, y, config.known, config.known_value, opts)
    return identify_general(build_model(config), u, y, opts)


def cmd_identify(config: RunConfig, out_dir: Path) -> Tuple[IdentResult, Path]:
    """
    Read the signal CSVs, identify and write result.csv.

    Signal paths default to input.csv/output.csv in the output directory.
    When those defaults are used, files edited since `simulate` are reported.
    """
    out_dir = Path(out_dir)
    manifest = out_dir / MANIFEST_FILE
    if manifest.exists() and not (config.input_csv or config.output_csv):
        for name in stale_files(manifest):
            logger.warning(f"{name} differs from the checksum recorded in {manifest}")
    u = read_signal_csv(config.input_csv or out_dir / INPUT_FILE)
    y = read_signal_csv(config.output_csv or out_dir / OUTPUT_FILE)
    result = run_identification(config, u, y)
    path = write_result_csv(config.result_csv or out_dir / RESULT_FILE, result)
    for name, value in sorted(result.estimates.items()):
        print(f"{name:>8s} = {value:.6g}")
    print(f"{'t':>8s} = {result.final_time:.6g}")
    for warning in result.warnings:
        print(f"warning: {warning}")
    return result, path


def cmd_lower(config: RunConfig) -> str:
    """Render the normalized identification equation of the configured model."""
    model = build_model(config)
    expr, k = identification_equation(model)
    text = expr.render()
    logger.debug(f"{model.name}: normalized by s^-{k}")
    print(text)
    return text
