"""
Shared fixtures: the reference grid and simulated data sets.

Data sets are built once per session; every test treats them as read-only
(SampledSignal samples are immutable).
"""

import pytest

from pyfracident.fracops import Convention
from pyfracident.signals import SampledSignal
from pyfracident.simulate import (
    VoigtParams,
    WaveParams,
    diffusion_wave_forward,
    first_order_step,
    test_signal,
    voigt_forward,
)

HORIZON = 5.0
DT = 1.25e-3
N = 4001

VOIGT_TRUTH = {"alpha": 0.5, "E0": 2.0, "E1": 1.0}
CAPUTO_EPS0 = 0.3
RL_KAPPA0 = 0.2
FIRST_ORDER = {"a": 2.0, "b": 3.0}
WAVE_RATIO = 0.5


@pytest.fixture(scope="session")
def sine():
    return test_signal("sine", HORIZON, DT)


@pytest.fixture(scope="session")
def ramp():
    return test_signal("ramp", HORIZON, DT)


@pytest.fixture(scope="session")
def prbs():
    return test_signal("prbs-smoothed", HORIZON, DT, seed=0)


@pytest.fixture(scope="session")
def prbs_alt():
    return test_signal("prbs-smoothed", HORIZON, DT, seed=3)


@pytest.fixture(scope="session")
def voigt_data(sine):
    """Homogeneous RL Voigt data, sine strain."""
    return sine, voigt_forward(sine, VoigtParams(**VOIGT_TRUTH))


@pytest.fixture(scope="session")
def voigt_prbs_data(prbs):
    """Homogeneous RL Voigt data, pseudo-random strain."""
    return prbs, voigt_forward(prbs, VoigtParams(**VOIGT_TRUTH))


def rl_inhom_pair(eps):
    """Strain and RL Voigt stress with J^(1-alpha)eps(0) = RL_KAPPA0."""
    params = VoigtParams(convention=Convention.RL, init=RL_KAPPA0, **VOIGT_TRUTH)
    return eps, voigt_forward(eps, params)


@pytest.fixture(scope="session")
def voigt_rl_inhom_data(prbs):
    return rl_inhom_pair(prbs)


@pytest.fixture(scope="session")
def voigt_rl_inhom_alt_data(prbs_alt):
    return rl_inhom_pair(prbs_alt)


@pytest.fixture(scope="session")
def voigt_caputo_data(sine):
    """Caputo Voigt data with eps(0) = CAPUTO_EPS0."""
    eps = sine + CAPUTO_EPS0
    params = VoigtParams(convention=Convention.CAPUTO, init=CAPUTO_EPS0, **VOIGT_TRUTH)
    return eps, voigt_forward(eps, params)


@pytest.fixture(scope="session")
def first_order_data():
    return first_order_step(HORIZON, DT, FIRST_ORDER["b"], FIRST_ORDER["a"])


@pytest.fixture(scope="session")
def smooth_step():
    return test_signal("smooth-step", HORIZON, DT)


@pytest.fixture(scope="session")
def wave_data(smooth_step):
    """Pure-delay (alpha = 2) diffusion-wave data."""
    return smooth_step, diffusion_wave_forward(smooth_step, WaveParams(2.0, WAVE_RATIO))


@pytest.fixture(scope="session")
def diffusion_data(smooth_step):
    """Diffusive (alpha = 1) data through the analytic kernel."""
    return smooth_step, diffusion_wave_forward(smooth_step, WaveParams(1.0, WAVE_RATIO))


@pytest.fixture
def zeros():
    return SampledSignal.zeros(DT, N)


def relative_error(estimate: float, truth: float) -> float:
    return abs(estimate - truth) / abs(truth)
