"""Forward data generation for validation experiments."""

from .forward import diffusion_wave_forward, first_order_step, voigt_forward, wave_kernel
from .models import VoigtParams, WaveParams
from .waveforms import SIGNAL_KINDS, smoothstep, test_signal

__all__ = [
    "VoigtParams",
    "WaveParams",
    "voigt_forward",
    "wave_kernel",
    "diffusion_wave_forward",
    "first_order_step",
    "SIGNAL_KINDS",
    "smoothstep",
    "test_signal",
]
