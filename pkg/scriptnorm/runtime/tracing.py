"""Stage tracing for pipeline commands."""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional

from scriptnorm.logging_config import StructuredLogger

logger = logging.getLogger(__name__)
structured = StructuredLogger(__name__)


@dataclass
class StageResult:
    """Outcome of one pipeline stage.

    Attributes:
        stage: Stage name (clean, noise, langid-train, ...)
        outputs: Paths or values produced by the stage
        counts: Named counts for the manifest and logs
        duration_ms: Wall time in milliseconds
        error: Error message if the stage failed, None otherwise
    """
    stage: str
    outputs: Dict[str, Any] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    duration_ms: float = 0.0
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@contextmanager
def traced_stage(stage: str, **context: Any) -> Iterator[StageResult]:
    """Time a stage and log its start and completion.

    The yielded StageResult is filled in by the caller; exceptions are
    recorded on it and re-raised.
    """
    result = StageResult(stage=stage)
    structured.log_stage_start(stage, **context)
    start_time = time.perf_counter()
    try:
        yield result
    except Exception as e:
        result.error = str(e)
        raise
    finally:
        result.duration_ms = (time.perf_counter() - start_time) * 1000
        structured.log_stage_complete(
            stage, result.duration_ms, counts=result.counts, success=result.ok
        )
