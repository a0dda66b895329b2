"""
Tests for the diffusion-wave estimator.

Groups:
    1. Pure-delay (wave) data
    2. Diffusive data through the analytic kernel
    3. Known-quantity handling and error paths
"""

import numpy as np
import pytest

from pyfracident.errors import SingularRegressorError
from pyfracident.estimators import identification_equation, identify_diffusion_wave
from pyfracident.estimators.diffusion import KNOWN_CHOICES
from pyfracident.estimators.presets import diffusion_wave_model

from .conftest import WAVE_RATIO, relative_error

# ── Shared fixtures ──────────────────────────────────────────────────────────


@pytest.fixture(scope="module")
def wave_result(wave_data):
    h, g = wave_data
    return identify_diffusion_wave(h, g)


# ── 1. Pure delay ────────────────────────────────────────────────────────────


class TestWaveData:
    def test_order_and_ratio(self, wave_result):
        assert relative_error(wave_result.estimates["alpha"], 2.0) < 0.01
        assert relative_error(wave_result.estimates["ratio"], WAVE_RATIO) < 0.01

    def test_first_stage_equation_is_free_of_the_ratio(self):
        expr, _ = identification_equation(diffusion_wave_model())
        assert expr.symbols == frozenset({"beta"})
        assert expr.signal_ids == frozenset({"g", "h"})

    def test_trajectories(self, wave_result):
        assert set(wave_result.trajectories) == {"alpha", "ratio"}
        assert wave_result.model == "diffusion-wave"


# ── 2. Diffusive data ────────────────────────────────────────────────────────


class TestDiffusionData:
    def test_order(self, diffusion_data):
        h, g = diffusion_data
        result = identify_diffusion_wave(h, g)
        assert relative_error(result.estimates["alpha"], 1.0) < 0.02

    def test_ratio(self, diffusion_data):
        h, g = diffusion_data
        result = identify_diffusion_wave(h, g)
        assert relative_error(result.estimates["ratio"], WAVE_RATIO) < 0.02

    def test_ratio_sign_along_the_sweep(self, diffusion_data, wave_data):
        for h, g in (diffusion_data, wave_data):
            ratio = identify_diffusion_wave(h, g).trajectories["ratio"]
            finite = ratio[np.isfinite(ratio)]
            assert finite.size > 0
            assert np.median(finite) > 0


# ── 3. Known quantities and errors ──────────────────────────────────────────


class TestKnownQuantities:
    def test_known_length_gives_velocity(self, wave_data):
        h, g = wave_data
        result = identify_diffusion_wave(h, g, known="L", known_value=1.0)
        assert result.estimates["L"] == 1.0
        assert result.estimates["v"] == pytest.approx(1.0 / WAVE_RATIO, rel=0.01)
        assert result.estimates["v"] > 0

    def test_known_velocity_gives_length(self, wave_data):
        h, g = wave_data
        result = identify_diffusion_wave(h, g, known="v", known_value=4.0)
        assert result.estimates["L"] == pytest.approx(4.0 * WAVE_RATIO, rel=0.01)

    def test_known_length_on_diffusive_data(self, diffusion_data):
        h, g = diffusion_data
        result = identify_diffusion_wave(h, g, known="L", known_value=2.0)
        assert result.estimates["v"] == pytest.approx(2.0 / WAVE_RATIO, rel=0.02)

    def test_choices(self):
        assert KNOWN_CHOICES == ("L", "v", "ratio-only")

    @pytest.mark.parametrize(
        "known, value", [("speed", 1.0), ("L", None), ("v", 0.0), ("v", -2.0)]
    )
    def test_invalid_known(self, wave_data, known, value):
        h, g = wave_data
        with pytest.raises(ValueError):
            identify_diffusion_wave(h, g, known=known, known_value=value)

    def test_zero_signals_are_singular(self, zeros):
        with pytest.raises(SingularRegressorError):
            identify_diffusion_wave(zeros, zeros)

    def test_grid_mismatch(self, wave_data):
        h, g = wave_data
        short = h.with_values(np.asarray(h.values[:100]))
        with pytest.raises(ValueError):
            identify_diffusion_wave(short, g)
