"""File I/O: YAML configuration and manifests, CSV signals and results."""

from .csv_utils import read_signal_csv, write_result_csv, write_signal_csv
from .yaml_utils import (
    CHECKSUM_ALGORITHM,
    atomic_write,
    compute_checksum,
    dump_yaml,
    get_yaml_handler,
    load_yaml,
    stale_files,
    write_manifest,
)

__all__ = [
    # YAML
    "get_yaml_handler",
    "load_yaml",
    "dump_yaml",
    "atomic_write",
    # Manifests
    "CHECKSUM_ALGORITHM",
    "compute_checksum",
    "write_manifest",
    "stale_files",
    # CSV
    "read_signal_csv",
    "write_signal_csv",
    "write_result_csv",
]
