"""Regular-expression tokenizer shared by sentence extraction and the metrics."""

import re
import string
from typing import List

# ASCII punctuation plus Arabic comma, semicolon, question mark and full stop
PUNCTUATION = string.punctuation + "،؛؟۔"

_PUNCT_CLASS = re.escape(PUNCTUATION)
TOKEN_PATTERN = re.compile(rf"[{_PUNCT_CLASS}]|[^\s{_PUNCT_CLASS}]+")


def tokenize(text: str) -> List[str]:
    """Split on whitespace and detach punctuation marks as single tokens.

    ZWNJ is not whitespace, so it stays inside its token.

    Example:
        >>> tokenize("کتاب، خوب")
        ['کتاب', '،', 'خوب']
    """
    return TOKEN_PATTERN.findall(text)


def is_word(token: str) -> bool:
    """True if the token contains at least one letter."""
    return any(ch.isalpha() for ch in token)
