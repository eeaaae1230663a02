"""Matrix-driven noise injection for one sentence."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from scriptnorm.alignment.matrix import CharAlignmentMatrix, GraphemeSeq
from scriptnorm.exceptions import NoiseError
from scriptnorm.inventory.inventory import ScriptInventory

logger = logging.getLogger(__name__)

LEVEL_STREAM = 0
ALL_STREAM = 1


@dataclass
class NoiseTrace:
    """Noisy sentence plus where it was changed.

    Attributes:
        noisy: Sentence after substitution
        replaceable: Number of positions that had at least one alternative
        replaced: (code point offset in the clean sentence, source, chosen target)
    """
    noisy: str
    replaceable: int
    replaced: List[Tuple[int, GraphemeSeq, GraphemeSeq]] = field(default_factory=list)

    @property
    def substitutions(self) -> int:
        return len(self.replaced)


def replacement_count(level: int, replaceable: int) -> int:
    """``round(level / 100 * replaceable)`` with halves rounded up."""
    return (level * replaceable + 50) // 100


def derive_rng(
    seed: int, level: int, index: int, stream: int = LEVEL_STREAM
) -> np.random.Generator:
    """Independent generator for sentence ``index`` at ``level``."""
    return np.random.default_rng([seed, level, index, stream])


def _boundaries(sentence: str, inventory: Optional[ScriptInventory]) -> List[int]:
    """Code-point offsets where a grapheme starts, plus the end of the sentence."""
    if inventory is None:
        return list(range(len(sentence) + 1))
    offsets = [0]
    for grapheme in inventory.segment(sentence):
        offsets.append(offsets[-1] + len(grapheme))
    return offsets


def replaceable_positions(
    sentence: str,
    matrix: CharAlignmentMatrix,
    inventory: Optional[ScriptInventory] = None,
) -> List[Tuple[int, int, GraphemeSeq]]:
    """Scan left to right for matrix sources, longest match first.

    With an inventory, matches start and end on grapheme boundaries only, so a
    one-code-point source never splits a compound grapheme. Without one, every
    code point is its own grapheme.

    Returns:
        ``(start, end, source)`` spans in code-point offsets, non-overlapping
    """
    sources = matrix.source_strings()
    if not sources:
        return []
    lengths = sorted({len(s) for s in sources}, reverse=True)
    boundaries = _boundaries(sentence, inventory)
    is_boundary = set(boundaries)

    spans = []
    position = 0
    while position < len(boundaries) - 1:
        i = boundaries[position]
        for length in lengths:
            piece = sentence[i : i + length]
            if len(piece) == length and i + length in is_boundary and piece in sources:
                spans.append((i, i + length, sources[piece]))
                position = boundaries.index(i + length, position)
                break
        else:
            position += 1
    return spans


def inject_noise_with_trace(
    sentence: str,
    matrix: CharAlignmentMatrix,
    level: int,
    rng: np.random.Generator,
    inventory: Optional[ScriptInventory] = None,
) -> NoiseTrace:
    """Replace exactly ``round(level% of replaceable positions)`` positions.

    Positions are drawn uniformly without replacement and each gets an
    alternative drawn uniformly from its matrix row.
    """
    if not 0 <= level <= 100:
        raise NoiseError(f"Noise level must be within [0, 100], got {level}")

    spans = replaceable_positions(sentence, matrix, inventory)
    k = replacement_count(level, len(spans))
    if k == 0:
        return NoiseTrace(noisy=sentence, replaceable=len(spans))

    chosen = sorted(int(p) for p in rng.choice(len(spans), size=k, replace=False))
    pieces = []
    replaced = []
    cursor = 0
    for index in chosen:
        start, end, source = spans[index]
        alternatives = matrix.alternatives(source)
        target = alternatives[int(rng.integers(len(alternatives)))].target
        pieces.append(sentence[cursor:start])
        pieces.append("".join(target))
        replaced.append((start, source, target))
        cursor = end
    pieces.append(sentence[cursor:])

    return NoiseTrace(noisy="".join(pieces), replaceable=len(spans), replaced=replaced)


def inject_noise(
    sentence: str,
    matrix: CharAlignmentMatrix,
    level: int,
    rng: np.random.Generator,
    inventory: Optional[ScriptInventory] = None,
) -> str:
    """Noisy version of ``sentence`` at ``level`` percent; see :func:`inject_noise_with_trace`."""
    return inject_noise_with_trace(sentence, matrix, level, rng, inventory).noisy
