"""Plain-text run manifests with SHA-256 checksums.

A manifest is one ``key<TAB>value`` line per entry, sorted by key. No
timestamps are recorded, so re-running a command yields identical bytes.
"""

import hashlib
import logging
from pathlib import Path
from typing import Any, Dict, Mapping

from scriptnorm.exceptions import ManifestError
from scriptnorm.logging_config import StructuredLogger

logger = logging.getLogger(__name__)
structured = StructuredLogger(__name__)

MANIFEST_NAME = "MANIFEST.tsv"

_CHUNK = 1 << 16


def sha256_text(text: str) -> str:
    """SHA-256 hex digest of UTF-8 encoded text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: str | Path) -> str:
    """SHA-256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as handle:
            for chunk in iter(lambda: handle.read(_CHUNK), b""):
                digest.update(chunk)
    except OSError as e:
        raise ManifestError(f"Cannot checksum {path}: {e}")
    return digest.hexdigest()


def _render(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_render(v) for v in value)
    text = str(value)
    if "\t" in text or "\n" in text:
        raise ManifestError(f"Manifest value may not contain tabs or newlines: {text!r}")
    return text


def write_manifest(
    output_dir: str | Path,
    command: str,
    entries: Mapping[str, Any],
    name: str = MANIFEST_NAME,
) -> Path:
    """Write a manifest into ``output_dir``.

    Args:
        output_dir: Directory receiving the manifest
        command: Subcommand that produced the outputs
        entries: Key-value pairs (config hash, seed, checksums, counts)
        name: File name of the manifest

    Returns:
        Path of the written manifest
    """
    rows: Dict[str, str] = {"command": command}
    for key, value in entries.items():
        if "\t" in key or "\n" in key:
            raise ManifestError(f"Manifest key may not contain tabs or newlines: {key!r}")
        rows[key] = _render(value)

    path = Path(output_dir) / name
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        body = "".join(f"{key}\t{rows[key]}\n" for key in sorted(rows))
        path.write_text(body, encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"Cannot write manifest {path}: {e}")

    structured.log_manifest_written(str(path), len(rows))
    return path


def read_manifest(path: str | Path) -> Dict[str, str]:
    """Read a manifest back into a dict of strings."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"Cannot read manifest {path}: {e}")
    rows: Dict[str, str] = {}
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line:
            continue
        key, sep, value = line.partition("\t")
        if not sep:
            raise ManifestError(f"{path}:{line_no}: expected 'key<TAB>value'")
        rows[key] = value
    return rows
