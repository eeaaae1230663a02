"""Code-point token parsing shared by the inventory and rule file formats.

A grapheme is written as one ``U+XXXX`` token or as several joined with ``+``
(``U+0627+U+064F`` for a compound carrier plus vowel mark).
"""

import re
from typing import Iterable

CODEPOINT_PATTERN = re.compile(r"U\+([0-9A-Fa-f]{4,6})")
DELETION_TOKEN = "∅"
ZWNJ = "\u200c"

# Two-code-point limit for a single inventory grapheme
MAX_GRAPHEME_CODEPOINTS = 2


def parse_codepoints(token: str) -> str:
    """Turn a ``U+XXXX[+U+YYYY...]`` token into its string.

    Args:
        token: Token text, without surrounding whitespace

    Returns:
        The decoded string (one or more code points)

    Raises:
        ValueError: If any part is not a well-formed ``U+`` code point
    """
    if not token:
        raise ValueError("empty code point token")

    parts = token.split("+U+")
    pieces = [parts[0]] + [f"U+{part}" for part in parts[1:]]
    chars = []
    for piece in pieces:
        match = CODEPOINT_PATTERN.fullmatch(piece)
        if match is None:
            raise ValueError(f"malformed code point token {token!r}")
        value = int(match.group(1), 16)
        if value > 0x10FFFF or 0xD800 <= value <= 0xDFFF:
            raise ValueError(f"code point out of range in {token!r}")
        chars.append(chr(value))
    return "".join(chars)


def format_codepoints(text: str) -> str:
    """Render a string as a ``U+XXXX+U+YYYY`` token."""
    return "+".join(f"U+{ord(ch):04X}" for ch in text)


def format_sequence(graphemes: Iterable[str]) -> str:
    """Render a grapheme sequence as space-separated tokens, ``∅`` when empty."""
    rendered = [format_codepoints(g) for g in graphemes]
    return " ".join(rendered) if rendered else DELETION_TOKEN


def parse_sequence(text: str) -> tuple[str, ...]:
    """Inverse of :func:`format_sequence`."""
    text = text.strip()
    if text == DELETION_TOKEN:
        return ()
    return tuple(parse_codepoints(tok) for tok in text.split())
