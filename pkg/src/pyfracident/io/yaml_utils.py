"""
YAML Files

Run configurations, custom model files and simulation manifests are all
YAML mappings read and written through one safe ruamel.yaml handler. A
manifest pairs the settings of a simulation with SHA-256 checksums of the
CSV files it produced, so `identify` can tell when data were edited after
they were generated.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import hashlib
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

try:
    from ruamel.yaml import YAML
except ImportError as e:
    raise ImportError(
        "ruamel.yaml is required for configuration and manifest files. "
        "Install with: pip install ruamel.yaml"
    ) from e

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

CHECKSUM_ALGORITHM = "sha256"
_CHUNK_SIZE = 1 << 16


def get_yaml_handler() -> YAML:
    """Safe handler: plain dicts and lists on load, block style on dump."""
    yaml = YAML(typ="safe", pure=True)
    yaml.default_flow_style = False
    yaml.width = 4096
    return yaml


# ============================================================================
# Mappings
# ============================================================================


def load_yaml(file_path: PathLike) -> Optional[Dict[str, Any]]:
    """
    Load a YAML mapping.

    Args:
        file_path: YAML file

    Returns:
        The mapping, or None for an empty document

    Raises:
        FileNotFoundError: If the file does not exist
        YAMLError: If the syntax is invalid
        ValueError: If the document is not a mapping

    Example:
        >>> load_yaml("run.yaml")["model"]
        'voigt'
    """
    path = Path(file_path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"File not found: {path}") from None
    data = get_yaml_handler().load(text)
    if data is None:
        return None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at top level, got {type(data).__name__}")
    logger.debug(f"loaded {len(data)} keys from {path}")
    return data


def dump_yaml(data: Mapping[str, Any], file_path: PathLike) -> None:
    """Write a mapping, creating parent directories."""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        get_yaml_handler().dump(dict(data), f)


def atomic_write(file_path: PathLike, data: Mapping[str, Any]) -> None:
    """
    Write a mapping so that readers never see a partial file.

    The document goes to a temporary file next to the target, which then
    replaces the target in one rename.
    """
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            get_yaml_handler().dump(dict(data), f)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug(f"wrote {path}")


# ============================================================================
# Checksums and manifests
# ============================================================================


def compute_checksum(file_path: PathLike, algorithm: str = CHECKSUM_ALGORITHM) -> str:
    """
    Hex digest of a file.

    Raises:
        ValueError: If hashlib does not know the algorithm
        FileNotFoundError: If the file does not exist
    """
    try:
        digest = hashlib.new(algorithm)
    except ValueError as e:
        raise ValueError(f"unsupported hash algorithm {algorithm!r}") from e
    with Path(file_path).open("rb") as f:
        for block in iter(lambda: f.read(_CHUNK_SIZE), b""):
            digest.update(block)
    return digest.hexdigest()


def write_manifest(
    file_path: PathLike, settings: Mapping[str, Any], files: Mapping[str, PathLike]
) -> Path:
    """
    Write a simulation manifest.

    Args:
        file_path: Manifest to write
        settings: Model, parameters and grid of the simulation
        files: Data files to fingerprint, keyed by role

    Returns:
        Path of the manifest

    Example:
        >>> write_manifest("out/manifest.yaml", {"seed": 0}, {"input": "out/input.csv"})
    """
    manifest = dict(settings)
    manifest["files"] = {Path(p).name: compute_checksum(p) for p in files.values()}
    atomic_write(file_path, manifest)
    return Path(file_path)


def stale_files(manifest_path: PathLike) -> List[str]:
    """
    Files listed in a manifest that are missing or no longer match their checksum.

    Names are resolved against the manifest's directory.

    Raises:
        FileNotFoundError: If the manifest does not exist
        ValueError: If the manifest has no `files` mapping
    """
    path = Path(manifest_path)
    manifest = load_yaml(path) or {}
    files = manifest.get("files")
    if not isinstance(files, dict):
        raise ValueError(f"{path}: manifest has no files mapping")
    stale = []
    for name, checksum in sorted(files.items()):
        target = path.parent / name
        if not target.exists() or compute_checksum(target) != checksum:
            stale.append(name)
    return stale
