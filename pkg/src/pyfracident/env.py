"""Environment-driven defaults of the command-line tool.

Optional environment variables:
- FRACIDENT_OUT: directory for simulated data and results when --out is
  not given (default: ./fracident-out)

Nothing is read at import time; the library itself never consults the
environment.
"""

import os

OUT_ENV_VAR = "FRACIDENT_OUT"
DEFAULT_OUT_DIR = "fracident-out"


def output_dir():
    """Default output directory.

    Returns:
        str: $FRACIDENT_OUT when set and non-empty, else fracident-out
    """
    return os.environ.get(OUT_ENV_VAR) or DEFAULT_OUT_DIR


def ensure_dir(path):
    """Create a run directory (and its parents) unless it exists.

    Args:
        path: Directory to create

    Returns:
        The given path, unchanged
    """
    os.makedirs(path, exist_ok=True)
    return path
