"""
Run Configuration Models

Data classes for batch run settings and the issues found while
validating them.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Mapping, Optional, Tuple

from ..estimators import IdentOptions

DEFAULT_SNR_DB = 40.0


@dataclass
class ConfigIssue:
    """
    Represents a problem found in a run configuration.

    Attributes:
        severity: Issue severity level ('CRITICAL', 'ERROR', 'WARNING', 'INFO')
        issue: Description of the problem
        key: Configuration key concerned, if any

    Class Constants:
        CRITICAL: Unreadable or empty configuration
        ERROR: Unknown key, wrong type or out-of-range value
        WARNING: Setting that is ignored or suspicious
        INFO: Informational note

    Example:
        >>> issue = ConfigIssue(ConfigIssue.ERROR, "unknown key", key="alfa")
        >>> print(issue)
        ERROR: unknown key (key: alfa)
    """

    CRITICAL = "CRITICAL"
    ERROR = "ERROR"
    WARNING = "WARNING"
    INFO = "INFO"

    severity: str
    issue: str
    key: Optional[str] = None

    @property
    def is_blocking(self) -> bool:
        return self.severity in (self.CRITICAL, self.ERROR)

    def __str__(self) -> str:
        key_str = f" (key: {self.key})" if self.key else ""
        return f"{self.severity}: {self.issue}{key_str}"


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one batch run.

    Every attribute corresponds to a key of the YAML run configuration.
    Paths are absolute once loaded through load_run_config.
    """

    # model selection
    model: str = "voigt"
    model_file: Optional[str] = None
    convention: str = "rl"
    regime: str = "homogeneous"
    order_bound: Optional[int] = 1

    # data generation
    signal: str = "sine"
    horizon: float = 5.0
    samples: int = 4001
    alpha: float = 0.5
    E0: float = 2.0
    E1: float = 1.0
    init: Optional[float] = 0.0
    gain: float = 3.0
    pole: float = 2.0
    wave_alpha: int = 2
    ratio: float = 0.5
    snr_db: Optional[float] = None
    seed: int = 0

    # identification
    known: str = "ratio-only"
    known_value: Optional[float] = None
    n_extra: Optional[int] = None
    theta2_extra: int = 2
    t_min: Optional[float] = None
    n_times: int = 200
    rcond: float = 1e-10
    coherence_tol: float = 0.05
    strict: bool = True
    refine: bool = True

    # files
    input_csv: Optional[str] = None
    output_csv: Optional[str] = None
    result_csv: Optional[str] = None

    # benchmark
    suite: Optional[Tuple[str, ...]] = None
    tolerance_scale: float = 1.0
    workers: int = 4

    @classmethod
    def keys(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        """Build from an already validated mapping (missing keys take defaults)."""
        values = dict(data)
        if values.get("suite") is not None:
            values["suite"] = tuple(values["suite"])
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if data["suite"] is not None:
            data["suite"] = list(data["suite"])
        return data

    def with_updates(self, **changes: Any) -> "RunConfig":
        return replace(self, **changes)

    @property
    def dt(self) -> float:
        return self.horizon / (self.samples - 1)

    def ident_options(self) -> IdentOptions:
        return IdentOptions(
            n_extra=self.n_extra,
            theta2_extra=self.theta2_extra,
            t_min=self.t_min,
            n_times=self.n_times,
            rcond=self.rcond,
            coherence_tol=self.coherence_tol,
            strict=self.strict,
            refine=self.refine,
        )
