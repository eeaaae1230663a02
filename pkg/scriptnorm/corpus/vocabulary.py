"""Frequency vocabularies over tokenized corpora."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Tuple

from scriptnorm.corpus.tokenizer import is_word, tokenize
from scriptnorm.exceptions import ConfigurationError, CorpusError

logger = logging.getLogger(__name__)

MIN_FREQ_RANGE = (3, 10)


def _check_min_freq(min_freq: int) -> None:
    low, high = MIN_FREQ_RANGE
    if not low <= min_freq <= high:
        raise ConfigurationError(f"min_freq must be in [{low}, {high}], got {min_freq}")


@dataclass
class Vocabulary:
    """Word frequencies at or above ``min_freq``.

    Attributes:
        entries: word -> count
        min_freq: Frequency threshold the vocabulary was built with
    """
    entries: Dict[str, int] = field(default_factory=dict)
    min_freq: int = 3

    def __post_init__(self) -> None:
        _check_min_freq(self.min_freq)
        for word, count in self.entries.items():
            if not word or any(ch.isspace() for ch in word):
                raise CorpusError(f"Vocabulary word may not be empty or contain spaces: {word!r}")
            if count < self.min_freq:
                raise CorpusError(
                    f"Vocabulary entry {word!r} has count {count} below min_freq {self.min_freq}"
                )

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: object) -> bool:
        return word in self.entries

    def words(self) -> List[str]:
        return [word for word, _ in self.sorted_items()]

    def sorted_items(self) -> List[Tuple[str, int]]:
        """Entries by descending count, then code-point order."""
        return sorted(self.entries.items(), key=lambda item: (-item[1], item[0]))

    def to_tsv(self) -> str:
        return "".join(f"{word}\t{count}\n" for word, count in self.sorted_items())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path, min_freq: int = MIN_FREQ_RANGE[0]) -> "Vocabulary":
        """Read a ``word<TAB>count`` file; entries below ``min_freq`` are rejected."""
        entries: Dict[str, int] = {}
        try:
            content = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise CorpusError(f"Cannot read vocabulary {path}: {e}")
        for line_no, line in enumerate(content.splitlines(), start=1):
            if not line.strip():
                continue
            word, sep, count = line.partition("\t")
            if not sep or not count.strip().isdigit():
                raise CorpusError(f"{path}:{line_no}: expected 'word<TAB>count'")
            entries[word] = int(count)
        return cls(entries=entries, min_freq=min_freq)


def build_vocabulary(corpus: str | Iterable[str], min_freq: int) -> Vocabulary:
    """Count word tokens and keep those occurring at least ``min_freq`` times.

    Tokens without any letter (punctuation, numbers) are not words and are skipped.

    Raises:
        ConfigurationError: If ``min_freq`` is outside [3, 10]
    """
    _check_min_freq(min_freq)
    lines = [corpus] if isinstance(corpus, str) else corpus

    counts: Counter = Counter()
    for line in lines:
        counts.update(tok for tok in tokenize(line) if is_word(tok))

    entries = {word: n for word, n in counts.items() if n >= min_freq}
    logger.info(f"Vocabulary: {len(entries)} of {len(counts)} word types with count >= {min_freq}")
    return Vocabulary(entries=entries, min_freq=min_freq)
