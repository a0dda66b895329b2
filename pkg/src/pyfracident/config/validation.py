"""
Run Configuration Validation

Checks a run configuration mapping key by key and loads it into a
RunConfig. Problems are collected as ConfigIssue records so that every
mistake in a file is reported at once.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from numbers import Integral, Real
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

from ..errors import ConfigError
from ..io import load_yaml
from ..simulate import SIGNAL_KINDS
from .models import ConfigIssue, RunConfig

try:
    from ruamel.yaml.error import YAMLError
except ImportError as e:
    raise ImportError(
        "ruamel.yaml is required for configuration loading. "
        "Install with: pip install ruamel.yaml"
    ) from e

logger = logging.getLogger(__name__)

MODEL_CHOICES = ("voigt", "first-order", "diffusion-wave", "custom")
CONVENTION_CHOICES = ("rl", "caputo")
REGIME_CHOICES = ("homogeneous", "eliminate", "identify", "eliminate-init", "identify-init")
KNOWN_CHOICES = ("L", "v", "ratio-only")
PATH_KEYS = ("model_file", "input_csv", "output_csv", "result_csv")


# ============================================================================
# Value checks
# ============================================================================


def _is_int(value: Any) -> bool:
    return isinstance(value, Integral) and not isinstance(value, bool)


def _is_real(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


def _choice(options: Tuple[str, ...]) -> Callable[[Any], Optional[str]]:
    def check(value: Any) -> Optional[str]:
        if not isinstance(value, str):
            return f"must be a string, got {type(value).__name__}"
        if value not in options:
            return f"must be one of {', '.join(options)}, got {value!r}"
        return None

    return check


def _integer(minimum: int) -> Callable[[Any], Optional[str]]:
    def check(value: Any) -> Optional[str]:
        if not _is_int(value):
            return f"must be an integer, got {type(value).__name__}"
        if value < minimum:
            return f"must be >= {minimum}, got {value}"
        return None

    return check


def _real(low: Optional[float] = None, high: Optional[float] = None, open_low: bool = True):
    def check(value: Any) -> Optional[str]:
        if not _is_real(value):
            return f"must be a number, got {type(value).__name__}"
        if low is not None and (value <= low if open_low else value < low):
            return f"must be {'>' if open_low else '>='} {low}, got {value}"
        if high is not None and not value < high:
            return f"must be < {high}, got {value}"
        return None

    return check


def _string(value: Any) -> Optional[str]:
    if not isinstance(value, str):
        return f"must be a string, got {type(value).__name__}"
    return None


def _boolean(value: Any) -> Optional[str]:
    if not isinstance(value, bool):
        return f"must be true or false, got {value!r}"
    return None


def _wave_order(value: Any) -> Optional[str]:
    if not _is_real(value) or float(value) not in (1.0, 2.0):
        return f"must be 1 or 2, got {value!r}"
    return None


def _names(value: Any) -> Optional[str]:
    if not isinstance(value, (list, tuple)) or not all(isinstance(v, str) for v in value):
        return "must be a list of case names"
    return None


# key -> (check, None allowed)
SCHEMA: Dict[str, Tuple[Callable[[Any], Optional[str]], bool]] = {
    "model": (_choice(MODEL_CHOICES), False),
    "model_file": (_string, True),
    "convention": (_choice(CONVENTION_CHOICES), False),
    "regime": (_choice(REGIME_CHOICES), False),
    "order_bound": (_integer(1), True),
    "signal": (_choice(SIGNAL_KINDS), False),
    "horizon": (_real(0.0), False),
    "samples": (_integer(2), False),
    "alpha": (_real(0.0, 1.0), False),
    "E0": (_real(), False),
    "E1": (_real(), False),
    "init": (_real(), True),
    "gain": (_real(), False),
    "pole": (_real(0.0), False),
    "wave_alpha": (_wave_order, False),
    "ratio": (_real(0.0), False),
    "snr_db": (_real(), True),
    "seed": (_integer(0), False),
    "known": (_choice(KNOWN_CHOICES), False),
    "known_value": (_real(0.0), True),
    "n_extra": (_integer(0), True),
    "theta2_extra": (_integer(0), False),
    "t_min": (_real(0.0, open_low=False), True),
    "n_times": (_integer(1), False),
    "rcond": (_real(0.0), False),
    "coherence_tol": (_real(0.0), False),
    "strict": (_boolean, False),
    "refine": (_boolean, False),
    "input_csv": (_string, True),
    "output_csv": (_string, True),
    "result_csv": (_string, True),
    "suite": (_names, True),
    "tolerance_scale": (_real(0.0), False),
    "workers": (_integer(1), False),
}


# ============================================================================
# Validation
# ============================================================================


def validate_config_data(data: Mapping[str, Any]) -> List[ConfigIssue]:
    """
    Validate an in-memory run configuration.

    Args:
        data: Mapping of configuration keys

    Returns:
        List of issues (empty if valid)

    Example:
        >>> issues = validate_config_data({"model": "voigt", "alfa": 0.5})
        >>> [str(i) for i in issues]
        ['ERROR: unknown key (key: alfa)']
    """
    issues: List[ConfigIssue] = []
    if not isinstance(data, Mapping):
        issues.append(ConfigIssue(ConfigIssue.CRITICAL, "configuration must be a mapping"))
        return issues

    for key in sorted(set(data) - set(SCHEMA)):
        issues.append(ConfigIssue(ConfigIssue.ERROR, "unknown key", key=key))

    for key, (check, nullable) in SCHEMA.items():
        if key not in data:
            continue
        value = data[key]
        if value is None:
            if not nullable:
                issues.append(ConfigIssue(ConfigIssue.ERROR, "must not be empty", key=key))
            continue
        problem = check(value)
        if problem:
            issues.append(ConfigIssue(ConfigIssue.ERROR, problem, key=key))

    if data.get("model") == "custom" and not data.get("model_file"):
        issues.append(
            ConfigIssue(ConfigIssue.ERROR, "model 'custom' needs a model_file", key="model_file")
        )
    if data.get("model_file") and data.get("model", "voigt") != "custom":
        issues.append(
            ConfigIssue(
                ConfigIssue.WARNING, "model_file ignored unless model is 'custom'", key="model_file"
            )
        )
    if data.get("known", "ratio-only") != "ratio-only" and data.get("known_value") is None:
        issues.append(
            ConfigIssue(
                ConfigIssue.ERROR, f"known {data.get('known')} needs known_value", key="known_value"
            )
        )
    return issues


def validate_config_file(file_path: Path) -> Tuple[Optional[Dict[str, Any]], List[ConfigIssue]]:
    """
    Load and validate a run configuration file.

    Returns:
        (data or None if unreadable, list of issues)
    """
    file_path = Path(file_path)
    if not file_path.exists():
        return None, [ConfigIssue(ConfigIssue.CRITICAL, f"File not found: {file_path}")]
    try:
        data = load_yaml(file_path)
    except (YAMLError, ValueError) as e:
        return None, [ConfigIssue(ConfigIssue.CRITICAL, f"Invalid configuration file: {e}")]
    if not data:
        return None, [ConfigIssue(ConfigIssue.CRITICAL, "Empty configuration file")]
    return data, validate_config_data(data)


def _resolve_paths(data: Dict[str, Any], base: Path) -> Dict[str, Any]:
    resolved = dict(data)
    for key in PATH_KEYS:
        value = resolved.get(key)
        if value:
            path = Path(value).expanduser()
            resolved[key] = str(path if path.is_absolute() else (base / path).resolve())
    return resolved


def load_run_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Load a run configuration, applying command-line overrides.

    Relative paths in the file are resolved against its directory,
    relative override paths against the working directory.

    Args:
        path: YAML run configuration (None = defaults only)
        overrides: Keys that take precedence over the file

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: If any CRITICAL or ERROR issue is found
    """
    data: Dict[str, Any] = {}
    issues: List[ConfigIssue] = []
    if path is not None:
        path = Path(path)
        loaded, issues = validate_config_file(path)
        if loaded is not None:
            data = _resolve_paths(loaded, path.resolve().parent)
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    if overrides:
        issues.extend(validate_config_data(overrides))
        data.update(_resolve_paths(overrides, Path.cwd()))
    for issue in issues:
        if not issue.is_blocking:
            logger.warning(f"config: {issue}")
    blocking = [issue for issue in issues if issue.is_blocking]
    if blocking:
        source = path if path is not None else "overrides"
        raise ConfigError(
            f"invalid configuration {source}: " + "; ".join(str(i) for i in blocking), blocking
        )
    config = RunConfig.from_dict(data)
    logger.debug(f"run configuration: {config.to_dict()}")
    return config
