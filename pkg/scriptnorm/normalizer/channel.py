"""Inverse channel model: which clean graphemes may hide behind a noisy one.

Serialized as UTF-8 TSV::

    #matrix_sha256  3f5c...
    #src_lang       ckb
    #dom_lang       fas
    #self_weight    1.000000
    U+0648          U+06C6      1.000000
    U+0648          U+0648      1.000000
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from scriptnorm.alignment.matrix import CharAlignmentMatrix, GraphemeSeq
from scriptnorm.exceptions import NormalizerError
from scriptnorm.inventory.codepoints import format_sequence, parse_sequence
from scriptnorm.inventory.inventory import ScriptInventory

logger = logging.getLogger(__name__)

Candidate = Tuple[GraphemeSeq, float]


@dataclass
class ChannelModel:
    """Noisy key (1-2 graphemes) -> clean candidates with channel weights.

    Attributes:
        candidates: Noisy key -> (clean sequence, weight), sorted by clean sequence
        self_weight: Weight of the identity candidate of every grapheme
        matrix_checksum: Checksum of the matrix the channel was fitted on
    """
    src_lang: str
    dom_lang: str
    candidates: Dict[GraphemeSeq, Tuple[Candidate, ...]] = field(default_factory=dict)
    self_weight: float = 1.0
    matrix_checksum: str = ""

    def __post_init__(self) -> None:
        for key, options in self.candidates.items():
            if not 1 <= len(key) <= 2:
                raise NormalizerError(f"Channel key must have 1-2 graphemes: {key!r}")
            for _, weight in options:
                if not weight > 0 or not math.isfinite(weight):
                    raise NormalizerError(f"Channel weights must be positive: {weight}")

    def __len__(self) -> int:
        return sum(len(options) for options in self.candidates.values())

    def key_strings(self) -> Dict[str, GraphemeSeq]:
        """Concatenated noisy key -> key, for scanning text."""
        return {"".join(key): key for key in self.candidates}

    def options(self, key: GraphemeSeq) -> Tuple[Candidate, ...]:
        return self.candidates.get(key, ())

    def to_tsv(self) -> str:
        lines = [
            f"#matrix_sha256\t{self.matrix_checksum}\n",
            f"#src_lang\t{self.src_lang}\n",
            f"#dom_lang\t{self.dom_lang}\n",
            f"#self_weight\t{self.self_weight:.6f}\n",
        ]
        for key in sorted(self.candidates):
            for clean, weight in self.candidates[key]:
                lines.append(f"{format_sequence(key)}\t{format_sequence(clean)}\t{weight:.6f}\n")
        return "".join(lines)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")

    @classmethod
    def from_tsv(cls, text: str) -> "ChannelModel":
        headers: Dict[str, str] = {}
        grouped: Dict[GraphemeSeq, List[Candidate]] = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            fields = line.split("\t")
            if line.startswith("#"):
                headers[fields[0][1:]] = fields[1] if len(fields) > 1 else ""
                continue
            if len(fields) != 3:
                raise NormalizerError(f"channel line {line_no}: expected 3 tab-separated fields")
            try:
                key = parse_sequence(fields[0])
                clean = parse_sequence(fields[1])
                weight = float(fields[2])
            except ValueError as e:
                raise NormalizerError(f"channel line {line_no}: {e}")
            grouped.setdefault(key, []).append((clean, weight))
        try:
            self_weight = float(headers.get("self_weight", "1.0"))
        except ValueError:
            raise NormalizerError("channel header self_weight is not a number")
        return cls(
            src_lang=headers.get("src_lang", ""),
            dom_lang=headers.get("dom_lang", ""),
            candidates={k: tuple(sorted(v)) for k, v in grouped.items()},
            self_weight=self_weight,
            matrix_checksum=headers.get("matrix_sha256", ""),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ChannelModel":
        try:
            return cls.from_tsv(Path(path).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError) as e:
            raise NormalizerError(f"Cannot read channel {path}: {e}")


def fit_channel(
    matrix: CharAlignmentMatrix,
    self_weight: float = 1.0,
    inventory: Optional[ScriptInventory] = None,
) -> ChannelModel:
    """Invert the matrix: every entry ``s -> t`` with score σ becomes ``t -> s`` with weight σ.

    Every grapheme of the matrix (and of ``inventory``, if given) also maps to
    itself with ``self_weight``. Deletion entries have no noisy key and are
    skipped. When several entries invert to the same pair, the largest weight
    is kept.

    Raises:
        NormalizerError: If the matrix has neither alternatives nor identity rows,
            or ``self_weight`` is not positive
    """
    if matrix.is_empty() and not matrix.identity:
        raise NormalizerError("Cannot fit a channel on an empty alignment matrix")
    if not self_weight > 0:
        raise NormalizerError(f"self_weight must be positive, got {self_weight}")

    inverse: Dict[GraphemeSeq, Dict[GraphemeSeq, float]] = {}
    skipped = 0
    for source, alternatives in matrix.entries.items():
        for entry in alternatives:
            if not entry.target:
                skipped += 1
                continue
            row = inverse.setdefault(entry.target, {})
            row[source] = max(row.get(source, 0.0), entry.score)

    graphemes: Iterable[str] = matrix.graphemes()
    if inventory is not None:
        graphemes = set(graphemes) | set(inventory.chars)
    for g in graphemes:
        row = inverse.setdefault((g,), {})
        row[(g,)] = max(row.get((g,), 0.0), self_weight)

    channel = ChannelModel(
        src_lang=matrix.src_lang,
        dom_lang=matrix.dom_lang,
        candidates={key: tuple(sorted(row.items())) for key, row in sorted(inverse.items())},
        self_weight=self_weight,
        matrix_checksum=matrix.checksum(),
    )
    logger.info(
        f"Channel {matrix.dom_lang}->{matrix.src_lang}: {len(channel.candidates)} keys, "
        f"{len(channel)} candidates ({skipped} deletion entries skipped)"
    )
    return channel
