"""
CSV Signal Files

Signals are stored as two columns "t,value" with full float precision;
identification results as one row per evaluation time.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import GridMismatchError
from ..signals import SampledSignal

logger = logging.getLogger(__name__)

SIGNAL_HEADER = "t,value"
CSV_FORMAT = "%.17g"

# relative tolerance on step uniformity when reading a grid back
STEP_RTOL = 1e-9

PathLike = Union[str, Path]


def write_signal_csv(path: PathLike, signal: SampledSignal) -> Path:
    """Write a signal as "t,value" rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([signal.times, signal.values])
    np.savetxt(path, table, delimiter=",", header=SIGNAL_HEADER, comments="", fmt=CSV_FORMAT)
    logger.debug(f"wrote {signal.n} samples to {path}")
    return path


def read_signal_csv(path: PathLike) -> SampledSignal:
    """
    Read a "t,value" file back into a SampledSignal.

    Raises:
        FileNotFoundError: If the file does not exist
        GridMismatchError: If the grid does not start at 0 or is not uniform
        ValueError: If the header or the table shape is wrong
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
    if header != SIGNAL_HEADER:
        raise ValueError(f"{path}: expected header {SIGNAL_HEADER!r}, got {header!r}")
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if table.shape[1] != 2 or table.shape[0] < 2:
        raise ValueError(f"{path}: expected at least 2 rows of 2 columns, got {table.shape}")
    t = table[:, 0]
    n = t.size
    dt = (t[-1] - t[0]) / (n - 1)
    if t[0] != 0.0:
        raise GridMismatchError(f"{path}: grid must start at t = 0, starts at {t[0]}")
    if not dt > 0 or np.max(np.abs(np.diff(t) - dt)) > STEP_RTOL * dt:
        raise GridMismatchError(f"{path}: time column is not a uniform grid")
    return SampledSignal(dt, table[:, 1])


def write_result_csv(path: PathLike, result) -> Path:
    """Write an IdentResult, one row per evaluation time."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    names, table = result.columns()
    np.savetxt(path, table, delimiter=",", header=",".join(names), comments="", fmt=CSV_FORMAT)
    logger.info(f"wrote {table.shape[0]} result rows to {path}")
    return path
