"""Logging configuration for scriptnorm.

This module provides centralized logging configuration with structured
logging support for pipeline stages, corpus audits and truncation events.

Includes a control-character filter so raw corpus text quoted in log
messages cannot break log lines.
"""

import logging
import re
import sys
from typing import Any, Dict, Optional


class ControlCharFilter(logging.Filter):
    """
    Filter that escapes control characters in log messages.

    Corpus lines can carry bidi marks, NULs or stray carriage returns. Those
    are rewritten as ``\\uXXXX`` escapes before the record is formatted.
    ZWNJ (U+200C) is escaped as well, since it is invisible in terminals.
    """

    CONTROL_PATTERN = re.compile("[\x00-\x08\x0b-\x1f\x7f\u200b-\u200f\u202a-\u202e\u2066-\u2069]")

    @classmethod
    def _escape(cls, text: str) -> str:
        return cls.CONTROL_PATTERN.sub(lambda m: f"\\u{ord(m.group(0)):04x}", text)

    def filter(self, record: logging.LogRecord) -> bool:
        """
        Escape control characters in the message and string args.

        Args:
            record: Log record to sanitize

        Returns:
            True (always allow record through after sanitization)
        """
        if isinstance(record.msg, str):
            record.msg = self._escape(record.msg)

        if record.args and isinstance(record.args, tuple):
            record.args = tuple(
                self._escape(arg) if isinstance(arg, str) else arg for arg in record.args
            )

        return True


def setup_logging(level: str = "INFO", format_style: str = "detailed") -> None:
    """Configure logging for scriptnorm.

    Sets up Python logging with the requested level and formatter. Logs go to
    stderr so that commands printing results on stdout stay pipeable.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format_style: 'detailed' for development, 'simple' for batch runs

    Example:
        >>> setup_logging(level="DEBUG", format_style="detailed")
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)

    if format_style == "detailed":
        log_format = (
            "%(asctime)s - %(name)s - %(levelname)s - "
            "%(filename)s:%(lineno)d - %(funcName)s() - %(message)s"
        )
    else:
        log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    logging.basicConfig(
        level=numeric_level,
        format=log_format,
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    root_logger = logging.getLogger()
    for handler in root_logger.handlers:
        handler.addFilter(ControlCharFilter())

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured: level={level}, format={format_style}")


class StructuredLogger:
    """Wrapper for structured logging of pipeline events.

    Every record carries an ``event`` key in ``extra`` so log processors can
    filter stage boundaries, audits and truncations without parsing text.

    Example:
        >>> logger = StructuredLogger("scriptnorm.noise")
        >>> logger.log_stage_start("noise", src_lang="ckb", dom_lang="fas")
        >>> logger.log_stage_complete("noise", duration_ms=812, counts={"pairs": 5000})
    """

    def __init__(self, name: str):
        """Initialize structured logger.

        Args:
            name: Logger name
        """
        self.logger = logging.getLogger(name)

    def log_stage_start(self, stage: str, **context: Any) -> None:
        """Log the start of a pipeline stage.

        Args:
            stage: Stage name (clean, vocab, noise, ...)
            **context: Additional identifying fields
        """
        self.logger.info(
            f"Stage started: {stage}",
            extra={"event": "stage_start", "stage": stage, **context},
        )

    def log_stage_complete(
        self,
        stage: str,
        duration_ms: float,
        counts: Optional[Dict[str, int]] = None,
        success: bool = True,
    ) -> None:
        """Log the completion of a pipeline stage.

        Args:
            stage: Stage name
            duration_ms: Wall time in milliseconds
            counts: Output counts worth recording
            success: Whether the stage succeeded
        """
        level = logging.INFO if success else logging.ERROR
        self.logger.log(
            level,
            f"Stage {'completed' if success else 'failed'}: {stage} ({duration_ms:.0f} ms)",
            extra={
                "event": "stage_complete",
                "stage": stage,
                "duration_ms": duration_ms,
                "counts": dict(counts or {}),
                "success": success,
            },
        )

    def log_removal(self, char: str, count: int, line_index: int) -> None:
        """Log characters removed by the corpus cleaner."""
        self.logger.debug(
            f"Removed U+{ord(char):04X} x{count} on line {line_index}",
            extra={
                "event": "removal",
                "codepoint": f"U+{ord(char):04X}",
                "count": count,
                "line_index": line_index,
            },
        )

    def log_truncation(self, item: str, limit: int) -> None:
        """Log that an enumeration hit its cap."""
        self.logger.info(
            f"Variant cap {limit} reached for {item!r}",
            extra={"event": "truncation", "item": item, "limit": limit},
        )

    def log_shortfall(self, label: str, requested: int, available: int) -> None:
        """Log that fewer samples than requested were available."""
        self.logger.warning(
            f"Label {label}: requested {requested} sentences, only {available} available",
            extra={
                "event": "shortfall",
                "label": label,
                "requested": requested,
                "available": available,
            },
        )

    def log_manifest_written(self, path: str, entries: int) -> None:
        """Log a manifest write."""
        self.logger.info(
            f"Manifest written: {path}",
            extra={"event": "manifest_written", "path": path, "entries": entries},
        )
