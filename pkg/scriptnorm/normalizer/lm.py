"""Character k-gram language model with add-alpha smoothing.

The estimate for a character uses the longest history suffix (up to k-1
characters) that was seen in training:

    P(c | h) = (count(h, c) + alpha) / (count(h) + alpha * |V|)

Each context therefore defines a proper distribution over the vocabulary V,
which holds the training characters, the inventory code points, an
unknown-character symbol and the end-of-sentence symbol.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Optional

from scriptnorm.exceptions import NormalizerError
from scriptnorm.inventory.codepoints import format_codepoints, parse_codepoints
from scriptnorm.inventory.inventory import ScriptInventory

logger = logging.getLogger(__name__)

BOS = "\x02"
EOS = "\x03"
UNK = "\x00"
DEFAULT_ORDER = 5
DEFAULT_ALPHA = 0.1
_EMPTY_CONTEXT = "-"


@dataclass
class CharLM:
    """Counts of characters following every context of length 0..order-1.

    Attributes:
        order: k, the length of the longest counted k-gram
        alpha: Additive smoothing constant
        vocab: Characters the model distributes probability over
        counts: Context -> next-character counts
        matrix_checksum: Checksum of the matrix of the paired channel, if any
    """
    order: int = DEFAULT_ORDER
    alpha: float = DEFAULT_ALPHA
    vocab: FrozenSet[str] = frozenset({UNK, EOS})
    counts: Dict[str, Counter] = field(default_factory=dict)
    matrix_checksum: str = ""

    def __post_init__(self) -> None:
        if self.order < 1:
            raise NormalizerError(f"LM order must be at least 1, got {self.order}")
        if not self.alpha > 0:
            raise NormalizerError(f"LM alpha must be positive, got {self.alpha}")
        self.vocab = frozenset(self.vocab) | {UNK, EOS}
        self._totals = {ctx: sum(c.values()) for ctx, c in self.counts.items()}

    def _symbol(self, ch: str) -> str:
        return ch if ch in self.vocab else UNK

    def start_history(self) -> str:
        return BOS * (self.order - 1)

    def log_prob(self, history: str, ch: str) -> float:
        """Natural-log probability of ``ch`` after ``history``."""
        symbol = self._symbol(ch)
        size = len(self.vocab)
        for length in range(min(self.order - 1, len(history)), -1, -1):
            context = history[len(history) - length :] if length else ""
            total = self._totals.get(context)
            if total:
                hits = self.counts[context].get(symbol, 0)
                return math.log((hits + self.alpha) / (total + self.alpha * size))
        return -math.log(size)

    def advance(self, history: str, ch: str) -> str:
        """History after appending ``ch``, trimmed to order-1 characters."""
        if self.order == 1:
            return ""
        return (history + self._symbol(ch))[-(self.order - 1) :]

    def score(self, sentence: str) -> float:
        """Log probability of a full sentence, end symbol included."""
        history = self.start_history()
        total = 0.0
        for ch in sentence:
            total += self.log_prob(history, ch)
            history = self.advance(history, ch)
        return total + self.log_prob(history, EOS)

    def to_tsv(self) -> str:
        lines = [
            f"#matrix_sha256\t{self.matrix_checksum}\n",
            f"#order\t{self.order}\n",
            f"#alpha\t{self.alpha!r}\n",
            f"#vocab\t{' '.join(format_codepoints(ch) for ch in sorted(self.vocab))}\n",
        ]
        for context in sorted(self.counts):
            rendered = format_codepoints(context) if context else _EMPTY_CONTEXT
            for ch, n in sorted(self.counts[context].items()):
                lines.append(f"{rendered}\t{format_codepoints(ch)}\t{n}\n")
        return "".join(lines)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")

    @classmethod
    def from_tsv(cls, text: str) -> "CharLM":
        headers: Dict[str, str] = {}
        counts: Dict[str, Counter] = {}
        try:
            for line_no, line in enumerate(text.splitlines(), start=1):
                if not line.strip():
                    continue
                fields = line.split("\t")
                if line.startswith("#"):
                    headers[fields[0][1:]] = fields[1] if len(fields) > 1 else ""
                    continue
                if len(fields) != 3:
                    raise NormalizerError(f"LM line {line_no}: expected 3 tab-separated fields")
                context = "" if fields[0] == _EMPTY_CONTEXT else parse_codepoints(fields[0])
                counts.setdefault(context, Counter())[parse_codepoints(fields[1])] = int(fields[2])
            vocab = frozenset(parse_codepoints(tok) for tok in headers.get("vocab", "").split())
            return cls(
                order=int(headers.get("order", DEFAULT_ORDER)),
                alpha=float(headers.get("alpha", DEFAULT_ALPHA)),
                vocab=vocab,
                counts=counts,
                matrix_checksum=headers.get("matrix_sha256", ""),
            )
        except ValueError as e:
            raise NormalizerError(f"Malformed LM table: {e}")

    @classmethod
    def load(cls, path: str | Path) -> "CharLM":
        try:
            return cls.from_tsv(Path(path).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError) as e:
            raise NormalizerError(f"Cannot read LM {path}: {e}")


def fit_lm(
    sentences: Iterable[str],
    order: int = DEFAULT_ORDER,
    alpha: float = DEFAULT_ALPHA,
    inventory: Optional[ScriptInventory] = None,
    matrix_checksum: str = "",
) -> CharLM:
    """Count character k-grams of a clean corpus.

    Raises:
        NormalizerError: If the corpus is empty
    """
    vocab = set()
    if inventory is not None:
        vocab.update(inventory.codepoints())
    counts: Dict[str, Counter] = {}
    n_sentences = 0
    for sentence in sentences:
        if not sentence:
            continue
        n_sentences += 1
        vocab.update(sentence)
        padded = BOS * (order - 1) + sentence + EOS
        for i in range(order - 1, len(padded)):
            ch = padded[i]
            for length in range(order):
                counts.setdefault(padded[i - length : i], Counter())[ch] += 1
    if n_sentences == 0:
        raise NormalizerError("Cannot fit a language model on an empty corpus")
    lm = CharLM(
        order=order,
        alpha=alpha,
        vocab=frozenset(vocab),
        counts=counts,
        matrix_checksum=matrix_checksum,
    )
    logger.info(
        f"Character LM: order {order}, {n_sentences} sentences, "
        f"{len(lm.vocab)} symbols, {len(counts)} contexts"
    )
    return lm
