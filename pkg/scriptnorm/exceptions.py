"""Custom exception classes for scriptnorm.

This module defines the exception hierarchy for the pipeline, providing
specific error types for each stage. The CLI treats every subclass of
ScriptNormError as a data error.
"""

from typing import Optional


class ScriptNormError(Exception):
    """Base exception for all scriptnorm errors.

    All custom exceptions in the package inherit from this base class,
    making it easy to catch any pipeline-specific error.
    """
    pass


class InventoryParseError(ScriptNormError):
    """Raised when an inventory file cannot be parsed or violates an invariant.

    Attributes:
        path: File the error was found in (None for in-memory input)
        line_no: 1-based line number of the offending line (None if not line-bound)
    """

    def __init__(self, message: str, path: Optional[str] = None, line_no: Optional[int] = None):
        self.path = path
        self.line_no = line_no
        location = ""
        if path is not None:
            location = f"{path}:"
        if line_no is not None:
            location = f"{location}{line_no}: "
        elif location:
            location = f"{location} "
        super().__init__(f"{location}{message}")


class RuleCompileError(InventoryParseError):
    """Raised when a mapping rule file is malformed or references unknown graphemes."""
    pass


class ConfigurationError(ScriptNormError):
    """Raised when a run configuration or environment setting is invalid."""
    pass


class CorpusError(ScriptNormError):
    """Raised when corpus input cannot be processed.

    Attributes:
        byte_offset: Offset of the first undecodable byte, when the cause is bad UTF-8
    """

    def __init__(self, message: str, byte_offset: Optional[int] = None):
        self.byte_offset = byte_offset
        super().__init__(message)


class AlignmentError(ScriptNormError):
    """Raised when alignment or matrix construction receives unusable input."""
    pass


class NoiseError(ScriptNormError):
    """Raised when noisy dataset generation cannot proceed."""
    pass


class MetricsError(ScriptNormError):
    """Raised for mismatched or empty hypothesis/reference sets."""
    pass


class LangIdError(ScriptNormError):
    """Raised when training, loading or evaluating a language identifier fails."""
    pass


class NormalizerError(ScriptNormError):
    """Raised when the noisy-channel normalizer is given unusable models or input."""
    pass


class ManifestError(ScriptNormError):
    """Raised when a run manifest cannot be written or read."""
    pass
