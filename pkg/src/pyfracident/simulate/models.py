"""
Simulation Parameter Models

True parameter sets for forward data generation.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from ..fracops import Convention

WAVE_ORDERS = (1.0, 2.0)


@dataclass(frozen=True)
class VoigtParams:
    """
    Fractional Voigt model sigma = E0*eps + E1*D^alpha eps.

    Attributes:
        E0: Elastic modulus
        E1: Viscoelastic coefficient
        alpha: Order in (0, 1)
        convention: Derivative definition used to generate the stress
        init: Initial-value datum: J^(1-alpha)eps(0) for RL, eps(0) for
            Caputo (None for Caputo means eps(0) must be zero)
    """

    E0: float
    E1: float
    alpha: float
    convention: Convention = Convention.RL
    init: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (math.isfinite(self.E0) and math.isfinite(self.E1)):
            raise ValueError(f"E0 and E1 must be finite, got {self.E0}, {self.E1}")
        object.__setattr__(self, "convention", Convention(self.convention))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["convention"] = self.convention.value
        return data


@dataclass(frozen=True)
class WaveParams:
    """
    Diffusion-wave boundary map g = exp(-c*s^(alpha/2)) h.

    Attributes:
        alpha: Order, 1 (diffusion) or 2 (wave) for forward simulation
        c: Ratio L/v (> 0)
    """

    alpha: float
    c: float

    def __post_init__(self):
        if float(self.alpha) not in WAVE_ORDERS:
            raise ValueError(f"forward simulation supports alpha in {{1, 2}}, got {self.alpha}")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
