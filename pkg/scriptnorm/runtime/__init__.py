"""Runtime helpers: manifests, ordered parallel maps and stage tracing."""

from scriptnorm.runtime.manifest import read_manifest, sha256_file, sha256_text, write_manifest
from scriptnorm.runtime.parallel import ordered_map
from scriptnorm.runtime.tracing import StageResult, traced_stage

__all__ = [
    "read_manifest",
    "sha256_file",
    "sha256_text",
    "write_manifest",
    "ordered_map",
    "StageResult",
    "traced_stage",
]
