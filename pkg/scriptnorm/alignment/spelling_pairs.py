"""Spelling pairs: words written similarly in the source and dominant scripts.

Rule-derived pairs come from rewriting vocabulary words with the mapping rules
and looking the variants up in a dominant-language lexicon. Dictionary pairs
come straight from a bilingual word list.
"""

import heapq
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import AbstractSet, Dict, Iterable, List, Set, Tuple

from scriptnorm.corpus.vocabulary import Vocabulary
from scriptnorm.exceptions import AlignmentError
from scriptnorm.inventory.rules import MappingRuleSet
from scriptnorm.logging_config import StructuredLogger

logger = logging.getLogger(__name__)
structured = StructuredLogger(__name__)

DEFAULT_VARIANT_CAP = 256


class Provenance(str, Enum):
    RULE_DERIVED = "rule_derived"
    DICTIONARY = "dictionary"


@dataclass(frozen=True)
class SpellingPair:
    """A source word and its dominant-script counterpart.

    Attributes:
        src_word: Word in the source script
        dom_word: Word in the dominant script
        provenance: How the pair was found
    """
    src_word: str
    dom_word: str
    provenance: Provenance = Provenance.RULE_DERIVED

    def __post_init__(self) -> None:
        for word in (self.src_word, self.dom_word):
            if not word or any(ch.isspace() for ch in word):
                raise AlignmentError(
                    f"Spelling pair words must be non-empty and unspaced: {word!r}"
                )


def enumerate_variants(
    word: str,
    rules: MappingRuleSet,
    cap: int = DEFAULT_VARIANT_CAP,
) -> Tuple[List[str], bool]:
    """Rewrite ``word`` with the rules, fewest substitutions first.

    At each grapheme the search keeps the grapheme, applies any positional rule
    target (one- or two-grapheme sources), or drops it if it is a diacritic.
    Each non-keep choice costs one substitution.

    Args:
        word: Source-script word
        rules: Compiled rule set; its source inventory segments the word
        cap: Maximum number of distinct variants

    Returns:
        (variants in discovery order including the word itself, truncated flag)
    """
    src_inv = rules.src_inventory
    graphemes = src_inv.segment(word) if src_inv is not None else list(word)
    diacritics = src_inv.diacritics if src_inv is not None else frozenset()
    n = len(graphemes)

    variants: List[str] = []
    found: Set[str] = set()
    # (cost, -position, prefix): deeper partial rewrites first within a cost level
    heap: List[Tuple[int, int, str]] = [(0, 0, "")]
    settled: Set[Tuple[int, str]] = set()

    while heap:
        cost, neg_pos, prefix = heapq.heappop(heap)
        pos = -neg_pos
        if (pos, prefix) in settled:
            continue
        settled.add((pos, prefix))

        if pos == n:
            if prefix and prefix not in found:
                found.add(prefix)
                variants.append(prefix)
                if len(variants) >= cap:
                    return variants, bool(heap)
            continue

        g = graphemes[pos]
        heapq.heappush(heap, (cost, -(pos + 1), prefix + g))
        for rule in rules.applicable((g,), pos, n):
            for target in rule.targets:
                if target != rule.source:
                    heapq.heappush(heap, (cost + 1, -(pos + 1), prefix + "".join(target)))
        if pos + 1 < n:
            pair = (g, graphemes[pos + 1])
            for rule in rules.applicable(pair, pos, n):
                for target in rule.targets:
                    if target != rule.source:
                        heapq.heappush(heap, (cost + 1, -(pos + 2), prefix + "".join(target)))
        if g in diacritics:
            heapq.heappush(heap, (cost + 1, -(pos + 1), prefix))

    return variants, False


def extract_spelling_pairs(
    src_vocab: Vocabulary | Iterable[str],
    dom_lexicon: AbstractSet[str],
    rules: MappingRuleSet,
    cap: int = DEFAULT_VARIANT_CAP,
) -> List[SpellingPair]:
    """Find source words whose rule variants occur in the dominant lexicon.

    Args:
        src_vocab: Source vocabulary (or plain word iterable)
        dom_lexicon: Dominant-language word set
        rules: Compiled rule set
        cap: Variants enumerated per word; truncation is logged

    Returns:
        Deduplicated pairs in vocabulary order

    Raises:
        AlignmentError: If the lexicon is empty
    """
    if not dom_lexicon:
        raise AlignmentError("Dominant-language lexicon is empty")

    words = src_vocab.words() if isinstance(src_vocab, Vocabulary) else list(src_vocab)
    pairs: List[SpellingPair] = []
    seen: Set[Tuple[str, str]] = set()
    truncated = 0

    for word in words:
        variants, was_truncated = enumerate_variants(word, rules, cap)
        if was_truncated:
            truncated += 1
            structured.log_truncation(word, cap)
        for variant in variants:
            if variant in dom_lexicon and (word, variant) not in seen:
                seen.add((word, variant))
                pairs.append(SpellingPair(word, variant, Provenance.RULE_DERIVED))

    logger.info(
        f"Extracted {len(pairs)} spelling pairs from {len(words)} words "
        f"({truncated} truncated at {cap} variants)"
    )
    return pairs


def load_lexicon(path: str | Path) -> Set[str]:
    """Read a word list: one word per line, extra tab-separated columns ignored."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise AlignmentError(f"Cannot read lexicon {path}: {e}")
    words = set()
    for line in content.splitlines():
        word = line.split("\t", 1)[0].strip()
        if word:
            words.add(word)
    return words


def load_bilingual_dictionary(path: str | Path) -> List[SpellingPair]:
    """Read ``src_word<TAB>dom_word`` lines as dictionary-provenance pairs."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise AlignmentError(f"Cannot read dictionary {path}: {e}")
    pairs: List[SpellingPair] = []
    seen: Dict[Tuple[str, str], int] = {}
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise AlignmentError(f"{path}:{line_no}: expected 'src_word<TAB>dom_word'")
        key = (fields[0].strip(), fields[1].strip())
        if key in seen:
            continue
        seen[key] = line_no
        pairs.append(SpellingPair(key[0], key[1], Provenance.DICTIONARY))
    return pairs


def save_pairs(pairs: Iterable[SpellingPair], path: str | Path) -> None:
    """Write pairs as ``src<TAB>dom<TAB>provenance``."""
    body = "".join(f"{p.src_word}\t{p.dom_word}\t{p.provenance.value}\n" for p in pairs)
    Path(path).write_text(body, encoding="utf-8")


def load_pairs(path: str | Path) -> List[SpellingPair]:
    """Read pairs written by :func:`save_pairs`."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise AlignmentError(f"Cannot read spelling pairs {path}: {e}")
    pairs = []
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise AlignmentError(f"{path}:{line_no}: expected 'src<TAB>dom[<TAB>provenance]'")
        try:
            provenance = Provenance(fields[2]) if len(fields) > 2 else Provenance.RULE_DERIVED
        except ValueError:
            raise AlignmentError(f"{path}:{line_no}: unknown provenance {fields[2]!r}")
        pairs.append(SpellingPair(fields[0], fields[1], provenance))
    return pairs
