"""Raw text cleaning for Wikipedia-style dumps.

Removes hyperlinks, email addresses and numeric dates, unifies Eastern Arabic
and Farsi digits to ASCII, drops runs of other scripts and collapses
whitespace. Every removed out-of-inventory character is counted in a
:class:`RemovalAudit` side channel.
"""

import logging
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel

from scriptnorm.exceptions import ConfigurationError, CorpusError
from scriptnorm.inventory.codepoints import ZWNJ
from scriptnorm.inventory.inventory import ScriptInventory
from scriptnorm.logging_config import StructuredLogger
from scriptnorm.runtime.parallel import ordered_map

logger = logging.getLogger(__name__)
structured = StructuredLogger(__name__)

URL_PATTERN = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
EMAIL_PATTERN = re.compile(r"[\w.+-]+@[\w-]+(?:\.[\w-]+)+")
DATE_PATTERN = re.compile(r"(?<!\d)\d{1,4}[/.-]\d{1,2}[/.-]\d{1,4}(?!\d)")

# Eastern Arabic and Farsi digits to ASCII
NUMERAL_TABLE = {
    **{0x0660 + i: str(i) for i in range(10)},
    **{0x06F0 + i: str(i) for i in range(10)},
}


class CleanConfig(BaseModel):
    """Cleaning switches.

    ``strip_zwnj`` may only be enabled for languages whose inventory does not
    use ZWNJ systematically; see :meth:`check_against`.
    """

    strip_urls_emails_dates: bool = True
    unify_numerals: bool = True
    strip_zwnj: bool = False
    keep_only_perso_arabic: bool = True

    def check_against(self, inv: ScriptInventory) -> None:
        """Raise ConfigurationError if the config contradicts the inventory."""
        if self.strip_zwnj and inv.uses_zwnj:
            raise ConfigurationError(
                f"strip_zwnj must be false for {inv.lang}: its script uses ZWNJ systematically"
            )


@dataclass
class RemovalAudit:
    """Counts of characters dropped by the keep-only filter.

    Attributes:
        removed: Removed character -> occurrences
        lines_touched: Number of lines with at least one removal
    """
    removed: Counter = field(default_factory=Counter)
    lines_touched: int = 0

    def merge(self, other: "RemovalAudit") -> None:
        self.removed.update(other.removed)
        self.lines_touched += other.lines_touched

    @property
    def total(self) -> int:
        return sum(self.removed.values())

    def to_rows(self) -> List[Tuple[str, int]]:
        """``(U+XXXX, count)`` rows, most frequent first."""
        return sorted(
            ((f"U+{ord(ch):04X}", n) for ch, n in self.removed.items()),
            key=lambda row: (-row[1], row[0]),
        )


def _decode(raw: str | bytes) -> str:
    if isinstance(raw, str):
        return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"invalid UTF-8 at byte offset {e.start}", byte_offset=e.start)


def _allowed(ch: str, inventory_codepoints: frozenset, keep_zwnj: bool) -> bool:
    if ch in inventory_codepoints:
        return True
    if "0" <= ch <= "9":
        return True
    if ch.isspace():
        return True
    if ch == ZWNJ:
        return keep_zwnj
    return unicodedata.category(ch).startswith("P")


def clean_text(
    raw: str | bytes,
    cfg: CleanConfig,
    inv: ScriptInventory,
    audit: Optional[RemovalAudit] = None,
    line_offset: int = 0,
) -> str:
    """Clean raw text for one language.

    Args:
        raw: Text or UTF-8 bytes
        cfg: Cleaning switches
        inv: Inventory of the corpus language
        audit: Optional side channel receiving removed-character counts
        line_offset: Index of the first line, used in audit log records

    Returns:
        Cleaned text: one non-empty, whitespace-collapsed line per input line

    Raises:
        CorpusError: If bytes are not valid UTF-8 (message names the byte offset)
        ConfigurationError: If ``strip_zwnj`` is set for a ZWNJ-using language
    """
    cfg.check_against(inv)
    text = _decode(raw)

    # ZWNJ first: removing it joins neighbours, which later steps must see.
    if cfg.strip_zwnj:
        text = text.replace(ZWNJ, "")

    if cfg.strip_urls_emails_dates:
        text = URL_PATTERN.sub(" ", text)
        text = EMAIL_PATTERN.sub(" ", text)

    if cfg.unify_numerals:
        text = text.translate(NUMERAL_TABLE)

    if cfg.keep_only_perso_arabic:
        inventory_codepoints = inv.codepoints()
        keep_zwnj = inv.uses_zwnj and not cfg.strip_zwnj
        kept_lines = []
        for index, line in enumerate(text.split("\n")):
            removed: Counter = Counter()
            chars = []
            for ch in line:
                if _allowed(ch, inventory_codepoints, keep_zwnj):
                    chars.append(ch)
                else:
                    removed[ch] += 1
                    chars.append(" ")
            if removed:
                if audit is not None:
                    audit.removed.update(removed)
                    audit.lines_touched += 1
                if logger.isEnabledFor(logging.DEBUG):
                    for ch, count in removed.items():
                        structured.log_removal(ch, count, line_offset + index)
            kept_lines.append("".join(chars))
        text = "\n".join(kept_lines)

    if cfg.strip_urls_emails_dates:
        text = DATE_PATTERN.sub(" ", text)

    lines = (" ".join(line.split()) for line in text.splitlines())
    return "\n".join(line for line in lines if line)


def clean_lines(
    lines: Iterable[str],
    cfg: CleanConfig,
    inv: ScriptInventory,
    threads: int = 1,
) -> Tuple[List[str], RemovalAudit]:
    """Clean lines independently, in parallel, preserving order.

    Lines that clean to nothing are dropped.
    """
    cfg.check_against(inv)
    indexed = list(enumerate(lines))

    def work(item: Tuple[int, str]) -> Tuple[str, RemovalAudit]:
        index, line = item
        local = RemovalAudit()
        return clean_text(line, cfg, inv, audit=local, line_offset=index), local

    results = ordered_map(work, indexed, threads)
    audit = RemovalAudit()
    cleaned: List[str] = []
    for text, local in results:
        audit.merge(local)
        if text:
            cleaned.extend(text.split("\n"))
    logger.info(
        f"Cleaned {len(indexed)} lines -> {len(cleaned)} kept, "
        f"{audit.total} characters removed"
    )
    return cleaned, audit


def clean_file(
    path_in: str | Path,
    path_out: str | Path,
    cfg: CleanConfig,
    inv: ScriptInventory,
    threads: int = 1,
) -> RemovalAudit:
    """Clean a UTF-8 file line by line and write one cleaned line per output line.

    Raises:
        CorpusError: If the input cannot be read or is not UTF-8
    """
    try:
        raw = Path(path_in).read_bytes()
    except OSError as e:
        raise CorpusError(f"Cannot read {path_in}: {e}")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"{path_in}: invalid UTF-8 at byte offset {e.start}", byte_offset=e.start)

    cleaned, audit = clean_lines(text.splitlines(), cfg, inv, threads)
    Path(path_out).write_text("".join(f"{line}\n" for line in cleaned), encoding="utf-8")
    return audit
