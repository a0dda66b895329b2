"""Run configuration models, validation and loading."""

from .models import DEFAULT_SNR_DB, ConfigIssue, RunConfig
from .validation import (
    KNOWN_CHOICES,
    MODEL_CHOICES,
    SCHEMA,
    load_run_config,
    validate_config_data,
    validate_config_file,
)

__all__ = [
    "DEFAULT_SNR_DB",
    "ConfigIssue",
    "RunConfig",
    "SCHEMA",
    "MODEL_CHOICES",
    "KNOWN_CHOICES",
    "load_run_config",
    "validate_config_data",
    "validate_config_file",
]
