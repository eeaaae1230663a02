"""Global grapheme alignment with the Needleman-Wunsch recurrence.

    D[0][0] = 0
    D[i][0] = i * w,  D[0][j] = j * w
    D[i][j] = max(D[i-1][j-1] + d(a_i, b_j), D[i-1][j] + w, D[i][j-1] + w)

with d = match_score when graphemes are equal and mismatch_score otherwise.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from scriptnorm.exceptions import AlignmentError

logger = logging.getLogger(__name__)

GAP: None = None
GAP_SYMBOL = "−"

Column = Tuple[Optional[str], Optional[str]]


class AlignmentParams(BaseModel):
    """Scoring constants for the alignment recurrence."""

    model_config = ConfigDict(frozen=True)

    match_score: int = 1
    mismatch_score: int = -1
    gap_penalty: int = -1


@dataclass
class Alignment:
    """One optimal global alignment.

    Attributes:
        score: Optimal value of the recurrence, ``D[n][m]``
        columns: Aligned (source, target) pairs; ``GAP`` (None) marks a gap
    """
    score: int
    columns: List[Column] = field(default_factory=list)

    def source(self) -> List[str]:
        return [a for a, _ in self.columns if a is not None]

    def target(self) -> List[str]:
        return [b for _, b in self.columns if b is not None]

    def substitutions(self) -> List[Tuple[str, str]]:
        """Columns where both sides hold a grapheme."""
        return [(a, b) for a, b in self.columns if a is not None and b is not None]

    def render(self) -> str:
        """Two-line debug dump with ``−`` for gaps."""
        top = " ".join(a if a is not None else GAP_SYMBOL for a, _ in self.columns)
        bottom = " ".join(b if b is not None else GAP_SYMBOL for _, b in self.columns)
        return f"{top}\n{bottom}"


def needleman_wunsch(
    a: Sequence[str],
    b: Sequence[str],
    params: Optional[AlignmentParams] = None,
) -> Alignment:
    """Align two grapheme sequences globally.

    Traceback prefers the diagonal, then a gap in ``b`` (up), then a gap in ``a``
    (left), so the result is deterministic among equally scoring alignments.

    Args:
        a: Source graphemes
        b: Target graphemes
        params: Scoring constants; defaults to +1 / -1 / -1

    Returns:
        Alignment with the optimal score and one optimal column list

    Raises:
        AlignmentError: If either sequence is empty
    """
    if len(a) == 0 or len(b) == 0:
        raise AlignmentError("Cannot align an empty sequence")
    params = params or AlignmentParams()
    match, mismatch, gap = params.match_score, params.mismatch_score, params.gap_penalty

    n, m = len(a), len(b)
    table = np.zeros((n + 1, m + 1), dtype=np.int64)
    table[:, 0] = np.arange(n + 1) * gap
    table[0, :] = np.arange(m + 1) * gap

    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            diagonal = table[i - 1, j - 1] + (match if ai == b[j - 1] else mismatch)
            up = table[i - 1, j] + gap
            left = table[i, j - 1] + gap
            table[i, j] = max(diagonal, up, left)

    columns: List[Column] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            d = match if a[i - 1] == b[j - 1] else mismatch
            if table[i, j] == table[i - 1, j - 1] + d:
                columns.append((a[i - 1], b[j - 1]))
                i -= 1
                j -= 1
                continue
        if i > 0 and table[i, j] == table[i - 1, j] + gap:
            columns.append((a[i - 1], GAP))
            i -= 1
        else:
            columns.append((GAP, b[j - 1]))
            j -= 1
    columns.reverse()

    return Alignment(score=int(table[n, m]), columns=columns)
