"""
Tests for forward simulation and test waveforms.

Groups:
    1. Parameter validation
    2. Voigt forward model (closed forms, conventions, initial values)
    3. Diffusion-wave forward model (delay, analytic kernel)
    4. First-order step response
    5. Test waveforms
"""

import logging
import math

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.special import erfc

from pyfracident.errors import ModelError
from pyfracident.fracops import Convention
from pyfracident.signals import SampledSignal, convolve
from pyfracident.simulate import (
    SIGNAL_KINDS,
    VoigtParams,
    WaveParams,
    diffusion_wave_forward,
    first_order_step,
    smoothstep,
    test_signal,
    voigt_forward,
    wave_kernel,
)

from .conftest import DT, HORIZON, N, VOIGT_TRUTH

# ── 1. Parameter validation ─────────────────────────────────────────────────


class TestParams:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2])
    def test_voigt_order_range(self, alpha):
        with pytest.raises(ValueError):
            VoigtParams(E0=2.0, E1=1.0, alpha=alpha)

    def test_voigt_finite_moduli(self):
        with pytest.raises(ValueError):
            VoigtParams(E0=math.inf, E1=1.0, alpha=0.5)

    def test_voigt_to_dict(self):
        data = VoigtParams(convention="caputo", init=0.3, **VOIGT_TRUTH).to_dict()
        assert data == {"E0": 2.0, "E1": 1.0, "alpha": 0.5, "convention": "caputo", "init": 0.3}

    @pytest.mark.parametrize("alpha, c", [(1.5, 0.5), (2.0, 0.0), (1.0, -1.0)])
    def test_wave_params(self, alpha, c):
        with pytest.raises(ValueError):
            WaveParams(alpha, c)


# ── 2. Voigt forward model ──────────────────────────────────────────────────


class TestVoigtForward:
    def test_ramp_closed_form(self, ramp):
        """eps = t gives sigma = 2t + 2*sqrt(t/pi)."""
        sigma = voigt_forward(ramp, VoigtParams(**VOIGT_TRUTH))
        assert sigma.at(1.0) == pytest.approx(2.0 + 2.0 / math.sqrt(math.pi), rel=5e-3)
        assert sigma.at(4.0) == pytest.approx(8.0 + 4.0 / math.sqrt(math.pi), rel=5e-3)

    def test_near_integer_order(self, sine):
        """alpha close to 1 approaches E0*sin + E1*cos."""
        sigma = voigt_forward(sine, VoigtParams(E0=2.0, E1=1.0, alpha=0.999))
        expected = 2.0 * np.sin(3.0) + np.cos(3.0)
        assert sigma.at(3.0) == pytest.approx(expected, abs=2e-2)

    def test_caputo_matches_rl_of_shifted_strain(self, sine):
        eps = sine + 0.3
        caputo = voigt_forward(eps, VoigtParams(convention="caputo", init=0.3, **VOIGT_TRUTH))
        rl = voigt_forward(sine, VoigtParams(**VOIGT_TRUTH))
        np.testing.assert_allclose((caputo - 0.6).values, rl.values, atol=1e-12)

    def test_caputo_requires_initial_value(self, sine):
        with pytest.raises(ModelError):
            voigt_forward(sine + 0.3, VoigtParams(convention="caputo", **VOIGT_TRUTH))

    def test_caputo_zero_start_without_init(self, sine):
        caputo = voigt_forward(sine, VoigtParams(convention=Convention.CAPUTO, **VOIGT_TRUTH))
        rl = voigt_forward(sine, VoigtParams(**VOIGT_TRUTH))
        np.testing.assert_allclose(caputo.values, rl.values)

    def test_rl_initial_value_is_an_impulse(self, sine):
        """The RL constant only touches the first sample."""
        plain = voigt_forward(sine, VoigtParams(**VOIGT_TRUTH))
        loaded = voigt_forward(sine, VoigtParams(init=0.2, **VOIGT_TRUTH))
        difference = (plain - loaded).values
        assert difference[0] == pytest.approx(2.0 * 1.0 * 0.2 / DT)
        assert not difference[1:].any()


# ── 3. Diffusion-wave forward model ─────────────────────────────────────────


class TestDiffusionWaveForward:
    def test_wave_is_pure_delay(self, smooth_step):
        g = diffusion_wave_forward(smooth_step, WaveParams(2.0, 0.5))
        shift = int(round(0.5 / DT))
        assert not g.values[:shift].any()
        np.testing.assert_array_equal(g.values[shift:], smooth_step.values[: N - shift])

    def test_off_grid_delay_warns(self, smooth_step, caplog):
        with caplog.at_level(logging.WARNING, logger="pyfracident.simulate.forward"):
            diffusion_wave_forward(smooth_step, WaveParams(2.0, 0.5 + DT / 3))
        assert "not a multiple" in caplog.text

    def test_delay_beyond_horizon_is_zero(self, smooth_step):
        g = diffusion_wave_forward(smooth_step, WaveParams(2.0, 2 * HORIZON))
        assert not g.values.any()

    def test_kernel_mass(self):
        """Integral of the kernel up to T is erfc(c/(2 sqrt(T)))."""
        k = wave_kernel(DT, N, 0.5)
        mass = trapezoid(k.values, dx=DT)
        assert mass == pytest.approx(erfc(0.5 / (2 * math.sqrt(HORIZON))), rel=1e-2)
        assert k.values[0] == 0.0

    def test_kernel_semigroup(self):
        """k_a * k_b = k_(a+b)."""
        left = convolve(wave_kernel(DT, N, 0.5), wave_kernel(DT, N, 0.5))
        right = wave_kernel(DT, N, 1.0)
        late = slice(int(1.0 / DT), N)
        np.testing.assert_allclose(left.values[late], right.values[late], rtol=1e-2)

    def test_diffusion_step_response_is_monotone(self, smooth_step, diffusion_data):
        _, g = diffusion_data
        assert g.values[0] == 0.0
        assert np.all(np.diff(g.values[int(1.0 / DT) :]) >= 0)
        assert g.values[-1] < smooth_step.values[-1]

    def test_kernel_rejects_nonpositive_ratio(self):
        with pytest.raises(ValueError):
            wave_kernel(DT, N, 0.0)


# ── 4. First-order step ─────────────────────────────────────────────────────


class TestFirstOrderStep:
    def test_step_response(self, first_order_data):
        u, y = first_order_data
        assert u.values.tolist() == [1.0] * N
        assert y.values[0] == 0.0
        assert y.at(HORIZON) == pytest.approx(1.5 * (1 - math.exp(-10.0)))

    def test_pole_must_be_positive(self):
        with pytest.raises(ValueError):
            first_order_step(HORIZON, DT, 1.0, 0.0)


# ── 5. Test waveforms ───────────────────────────────────────────────────────


class TestWaveforms:
    @pytest.mark.parametrize("kind", SIGNAL_KINDS)
    def test_every_kind_starts_at_zero(self, kind):
        signal = test_signal(kind, HORIZON, DT)
        assert signal.n == N
        assert signal.values[0] == 0.0

    def test_parameters(self):
        ramp = test_signal("ramp", 1.0, 0.5, slope=3.0)
        assert ramp.values.tolist() == [0.0, 1.5, 3.0]
        step = test_signal("smooth-step", HORIZON, DT, amplitude=2.0, rise=0.5)
        assert step.at(0.5) == pytest.approx(2.0)
        assert step.at(0.25) == pytest.approx(1.0)

    def test_prbs_is_seeded(self):
        a = test_signal("prbs-smoothed", HORIZON, DT, seed=7)
        b = test_signal("prbs-smoothed", HORIZON, DT, seed=7)
        assert np.array_equal(a.values, b.values)
        assert a.values.min() >= -1e-12 and a.values.max() <= 1.0 + 1e-12

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown signal kind"):
            test_signal("square", HORIZON, DT)

    def test_smoothstep_is_clamped(self):
        np.testing.assert_allclose(smoothstep(np.array([-1.0, 0.0, 0.5, 1.0, 2.0])),
                                   [0.0, 0.0, 0.5, 1.0, 1.0])
