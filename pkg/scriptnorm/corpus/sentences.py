"""Sentence extraction with token-length bounds."""

import logging
import re
from pathlib import Path
from typing import List

from scriptnorm.corpus.tokenizer import tokenize
from scriptnorm.exceptions import ConfigurationError, CorpusError

logger = logging.getLogger(__name__)

SENTENCE_BOUNDARY = re.compile(r"[.۔؟?!\n]")

DEFAULT_MIN_TOKENS = 5
DEFAULT_MAX_TOKENS = 20


def extract_sentences(
    corpus: str,
    min_tokens: int = DEFAULT_MIN_TOKENS,
    max_tokens: int = DEFAULT_MAX_TOKENS,
) -> List[str]:
    """Split a cleaned corpus into sentences and keep those of acceptable length.

    Boundaries are ``. ۔ ؟ ? !`` and newlines; the boundary marks themselves are
    dropped. Each kept sentence is emitted as its tokens joined by single spaces.

    Args:
        corpus: Cleaned text
        min_tokens: Minimum token count, inclusive
        max_tokens: Maximum token count, inclusive

    Returns:
        Sentences in corpus order

    Raises:
        ConfigurationError: If the bounds are not ``1 <= min_tokens <= max_tokens``
    """
    if min_tokens < 1 or max_tokens < min_tokens:
        raise ConfigurationError(
            f"Sentence bounds must satisfy 1 <= min <= max, got [{min_tokens}, {max_tokens}]"
        )

    sentences = []
    segments = SENTENCE_BOUNDARY.split(corpus)
    for segment in segments:
        tokens = tokenize(segment)
        if min_tokens <= len(tokens) <= max_tokens:
            sentences.append(" ".join(tokens))

    logger.debug(f"Kept {len(sentences)} of {len(segments)} segments")
    return sentences


def read_sentences(path: str | Path) -> List[str]:
    """One sentence per line; a trailing newline does not add an empty sentence.

    Raises:
        CorpusError: If the file cannot be read or is not UTF-8
    """
    try:
        content = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"{path}: invalid UTF-8 at byte offset {e.start}", byte_offset=e.start)
    except OSError as e:
        raise CorpusError(f"Cannot read {path}: {e}")
    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]
