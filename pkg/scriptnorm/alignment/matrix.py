"""Character-alignment matrix built from spelling-pair alignments and rules.

Serialized as UTF-8 TSV::

    #src_lang   ckb
    #dom_lang   fas
    U+0641      U+0648      1.000000    count
    U+0632      U+0630      1.000000    rule
    U+02C7      ∅           1.000000    rule

Sources and targets are space-separated grapheme tokens; ``∅`` is a deletion.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from scriptnorm.alignment.needleman_wunsch import AlignmentParams, needleman_wunsch
from scriptnorm.alignment.spelling_pairs import SpellingPair
from scriptnorm.exceptions import AlignmentError
from scriptnorm.inventory.codepoints import format_sequence, parse_sequence
from scriptnorm.inventory.inventory import ScriptInventory
from scriptnorm.inventory.rules import MappingRuleSet
from scriptnorm.runtime.manifest import sha256_text
from scriptnorm.runtime.parallel import ordered_map

logger = logging.getLogger(__name__)

GraphemeSeq = Tuple[str, ...]

DEFAULT_PRUNE_THRESHOLD = 0.1
ORIGIN_RULE = "rule"
ORIGIN_COUNT = "count"
_SCORE_EPS = 1e-9


@dataclass(frozen=True)
class MatrixEntry:
    """One replacement alternative for a source grapheme sequence."""

    target: GraphemeSeq
    score: float
    origin: str = ORIGIN_COUNT


@dataclass
class CharAlignmentMatrix:
    """Scored source -> target alternatives for one language pair.

    Attributes:
        src_lang: Source language code
        dom_lang: Dominant language code
        entries: Source sequence -> alternatives, sorted by target
        identity: Identity scores kept out of ``entries`` for diagnostics
    """
    src_lang: str
    dom_lang: str
    entries: Dict[GraphemeSeq, Tuple[MatrixEntry, ...]] = field(default_factory=dict)
    identity: Dict[GraphemeSeq, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for source, alternatives in self.entries.items():
            if not 1 <= len(source) <= 2:
                raise AlignmentError(f"Matrix source must have 1-2 graphemes: {source!r}")
            for entry in alternatives:
                if not (DEFAULT_PRUNE_THRESHOLD - _SCORE_EPS <= entry.score <= 1.0 + _SCORE_EPS):
                    raise AlignmentError(
                        f"Matrix score {entry.score} for {format_sequence(source)} "
                        f"outside [{DEFAULT_PRUNE_THRESHOLD}, 1.0]"
                    )
                if entry.origin == ORIGIN_RULE and abs(entry.score - 1.0) > _SCORE_EPS:
                    raise AlignmentError("Rule-derived matrix entries must score exactly 1.0")

    def __len__(self) -> int:
        return sum(len(alts) for alts in self.entries.values())

    def is_empty(self) -> bool:
        return not any(self.entries.values())

    def alternatives(self, source: GraphemeSeq) -> Tuple[MatrixEntry, ...]:
        return self.entries.get(source, ())

    @property
    def max_source_len(self) -> int:
        return max((len(s) for s, alts in self.entries.items() if alts), default=0)

    def source_strings(self) -> Dict[str, GraphemeSeq]:
        """Concatenated source string -> source sequence, for text scanning."""
        return {"".join(s): s for s, alts in self.entries.items() if alts}

    def graphemes(self) -> List[str]:
        """Every grapheme appearing as a source or in a target, sorted."""
        seen = set()
        for source, alternatives in self.entries.items():
            seen.update(source)
            for entry in alternatives:
                seen.update(entry.target)
        seen.update(g for source in self.identity for g in source)
        return sorted(seen)

    def to_tsv(self) -> str:
        lines = [f"#src_lang\t{self.src_lang}\n", f"#dom_lang\t{self.dom_lang}\n"]
        rows = []
        for source, alternatives in self.entries.items():
            for entry in alternatives:
                rows.append(
                    (
                        format_sequence(source),
                        format_sequence(entry.target),
                        f"{entry.score:.6f}",
                        entry.origin,
                    )
                )
        rows.sort()
        lines.extend("\t".join(row) + "\n" for row in rows)
        return "".join(lines)

    def identity_tsv(self) -> str:
        """Diagnostics table of identity alignments: ``source<TAB>score``."""
        rows = sorted((format_sequence(s), f"{score:.6f}") for s, score in self.identity.items())
        return "".join(f"{s}\t{score}\n" for s, score in rows)

    def checksum(self) -> str:
        """SHA-256 of the serialized matrix."""
        return sha256_text(self.to_tsv())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")

    @classmethod
    def from_tsv(cls, text: str, source: Optional[str] = None) -> "CharAlignmentMatrix":
        src_lang = dom_lang = ""
        grouped: Dict[GraphemeSeq, List[MatrixEntry]] = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            fields = line.split("\t")
            if line.startswith("#"):
                if fields[0] == "#src_lang" and len(fields) > 1:
                    src_lang = fields[1]
                elif fields[0] == "#dom_lang" and len(fields) > 1:
                    dom_lang = fields[1]
                continue
            where = f"{source}:{line_no}" if source else f"line {line_no}"
            if len(fields) != 4:
                raise AlignmentError(f"{where}: expected 4 tab-separated fields")
            try:
                src_seq = parse_sequence(fields[0])
                target = parse_sequence(fields[1])
                score = float(fields[2])
            except ValueError as e:
                raise AlignmentError(f"{where}: {e}")
            if fields[3] not in (ORIGIN_RULE, ORIGIN_COUNT):
                raise AlignmentError(f"{where}: unknown origin {fields[3]!r}")
            grouped.setdefault(src_seq, []).append(MatrixEntry(target, score, fields[3]))
        return cls(
            src_lang=src_lang,
            dom_lang=dom_lang,
            entries={s: tuple(sorted(alts, key=lambda e: e.target)) for s, alts in grouped.items()},
        )

    @classmethod
    def load(cls, path: str | Path) -> "CharAlignmentMatrix":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise AlignmentError(f"Cannot read matrix {path}: {e}")
        return cls.from_tsv(text, source=str(path))

    @classmethod
    def from_alternatives(
        cls,
        src_lang: str,
        dom_lang: str,
        alternatives: Mapping[str, Sequence[str]],
        score: float = 1.0,
    ) -> "CharAlignmentMatrix":
        """Build a matrix from single-code-point strings, one grapheme per character.

        Example:
            >>> CharAlignmentMatrix.from_alternatives("ckb", "fas", {"x": ["y"]})
        """
        origin = ORIGIN_RULE if score == 1.0 else ORIGIN_COUNT
        entries = {
            tuple(source): tuple(
                sorted(
                    (MatrixEntry(tuple(t), score, origin) for t in targets),
                    key=lambda e: e.target,
                )
            )
            for source, targets in alternatives.items()
        }
        return cls(src_lang=src_lang, dom_lang=dom_lang, entries=entries)


def _segmenter(inventory: Optional[ScriptInventory]) -> Callable[[str], List[str]]:
    if inventory is None:
        return list
    return inventory.segment


def count_alignments(
    pairs: Sequence[SpellingPair],
    rules: Optional[MappingRuleSet] = None,
    params: Optional[AlignmentParams] = None,
    threads: int = 1,
) -> Counter:
    """Aligned (source grapheme, target grapheme) counts over all pairs.

    Gap columns are not counted. Per-pair counters are merged by summation, so
    the result does not depend on the thread count.
    """
    split_src = _segmenter(rules.src_inventory if rules is not None else None)
    split_dom = _segmenter(rules.dom_inventory if rules is not None else None)

    def align_one(pair: SpellingPair) -> Counter:
        alignment = needleman_wunsch(split_src(pair.src_word), split_dom(pair.dom_word), params)
        return Counter(alignment.substitutions())

    return merge_counts(ordered_map(align_one, pairs, threads))


def build_alignment_matrix(
    pairs: Sequence[SpellingPair],
    rules: MappingRuleSet,
    params: Optional[AlignmentParams] = None,
    prune_threshold: float = DEFAULT_PRUNE_THRESHOLD,
    threads: int = 1,
) -> CharAlignmentMatrix:
    """Merge word alignments and rules into one character-alignment matrix.

    Counts are scaled per source grapheme to unit Euclidean norm, entries under
    ``prune_threshold`` are dropped, rule targets are then written at 1.0, and
    identity entries move to the diagnostics table. Rule positions do not
    carry over into the matrix.

    Raises:
        AlignmentError: If there are neither pairs nor rules
    """
    if not pairs and not rules.rules:
        raise AlignmentError("Nothing to build: no spelling pairs and no rules")

    counts = count_alignments(pairs, rules, params, threads) if pairs else Counter()

    rows: Dict[GraphemeSeq, Dict[GraphemeSeq, Tuple[float, str]]] = {}
    by_source: Dict[str, Dict[str, int]] = {}
    for (s, t), c in counts.items():
        by_source.setdefault(s, {})[t] = c

    for s, row in by_source.items():
        norm = math.sqrt(sum(c * c for c in row.values()))
        for t, c in row.items():
            score = c / norm
            if score >= prune_threshold:
                rows.setdefault((s,), {})[(t,)] = (score, ORIGIN_COUNT)

    for rule in rules.rules:
        row = rows.setdefault(rule.source, {})
        for target in rule.targets:
            row[target] = (1.0, ORIGIN_RULE)

    entries: Dict[GraphemeSeq, Tuple[MatrixEntry, ...]] = {}
    identity: Dict[GraphemeSeq, float] = {}
    for source in sorted(rows):
        alternatives = []
        for target in sorted(rows[source]):
            score, origin = rows[source][target]
            if target == source:
                identity[source] = score
            else:
                alternatives.append(MatrixEntry(target, score, origin))
        if alternatives:
            entries[source] = tuple(alternatives)

    matrix = CharAlignmentMatrix(
        src_lang=rules.src_lang, dom_lang=rules.dom_lang, entries=entries, identity=identity
    )
    logger.info(
        f"Alignment matrix {rules.src_lang}->{rules.dom_lang}: {len(entries)} sources, "
        f"{len(matrix)} alternatives, {len(identity)} identity rows"
    )
    return matrix


def merge_counts(counters: Iterable[Counter]) -> Counter:
    """Sum alignment counters."""
    total: Counter = Counter()
    for counter in counters:
        total.update(counter)
    return total
