"""Script inventories for the supported Perso-Arabic orthographies.

Inventory files are UTF-8, tab-separated, one declaration per line::

    lang        ckb
    script_kind alphabet
    uses_zwnj   false
    char        U+06C6      waw with v
    diacritic   U+064E      fatha

``#`` starts a comment. ``char`` and ``diacritic`` lines take a grapheme token
(``U+XXXX`` or ``U+XXXX+U+YYYY`` for compounds) and an optional free-text note.
Diacritics are members of the character set as well.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from scriptnorm.exceptions import InventoryParseError
from scriptnorm.inventory.codepoints import MAX_GRAPHEME_CODEPOINTS, parse_codepoints

logger = logging.getLogger(__name__)

DEFAULT_DATA_DIR = Path(__file__).resolve().parent.parent / "data"

SUPPORTED_LANGS: FrozenSet[str] = frozenset(
    {"azb", "mzn", "glk", "ckb", "kmr", "hac", "kas", "snd", "fas", "arb", "urd"}
)


class ScriptKind(str, Enum):
    """Writing system type."""

    ABJAD = "abjad"
    ALPHABET = "alphabet"


@dataclass(frozen=True)
class LanguageInfo:
    """Reference metadata for one language.

    Attributes:
        name: English language name
        script_kind: Abjad or alphabet
        diacritics: Whether the script writes Harakat
        uses_zwnj: Whether ZWNJ is used systematically
        dominant: Dominant languages whose script speakers borrow
    """

    name: str
    script_kind: ScriptKind
    diacritics: bool
    uses_zwnj: bool
    dominant: Tuple[str, ...] = ()


LANGUAGE_METADATA: Mapping[str, LanguageInfo] = {
    "azb": LanguageInfo("Azeri Turkish", ScriptKind.ABJAD, True, True, ("fas",)),
    "kas": LanguageInfo("Kashmiri", ScriptKind.ALPHABET, True, False, ("urd",)),
    "glk": LanguageInfo("Gilaki", ScriptKind.ABJAD, True, True, ("fas",)),
    "hac": LanguageInfo("Gorani", ScriptKind.ALPHABET, False, False, ("ckb", "fas", "arb")),
    "kmr": LanguageInfo("Kurmanji Kurdish", ScriptKind.ALPHABET, False, False, ("fas", "arb")),
    "ckb": LanguageInfo("Sorani Kurdish", ScriptKind.ALPHABET, False, False, ("fas", "arb")),
    "mzn": LanguageInfo("Mazanderani", ScriptKind.ABJAD, True, True, ("fas",)),
    "snd": LanguageInfo("Sindhi", ScriptKind.ABJAD, True, False, ("urd",)),
    "fas": LanguageInfo("Persian", ScriptKind.ABJAD, True, True),
    "arb": LanguageInfo("Arabic", ScriptKind.ABJAD, True, False),
    "urd": LanguageInfo("Urdu", ScriptKind.ABJAD, True, True),
}


@dataclass(frozen=True)
class ScriptInventory:
    """Character set, diacritics and metadata of one language's script.

    Attributes:
        lang: ISO-639-3 code
        chars: Graphemes, each one or two code points
        diacritics: Subset of chars that are combining Harakat
        uses_zwnj: Whether ZWNJ is part of normal spelling
        script_kind: Abjad or alphabet
        notes: Provenance note per grapheme
    """

    lang: str
    chars: FrozenSet[str]
    diacritics: FrozenSet[str]
    uses_zwnj: bool
    script_kind: ScriptKind
    notes: Mapping[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.lang not in SUPPORTED_LANGS:
            raise InventoryParseError(f"unknown language code {self.lang!r}")
        if not self.diacritics <= self.chars:
            raise InventoryParseError(f"{self.lang}: diacritics must be a subset of chars")
        for grapheme in self.chars:
            if not grapheme or len(grapheme) > MAX_GRAPHEME_CODEPOINTS:
                raise InventoryParseError(f"{self.lang}: invalid grapheme {grapheme!r}")
            if any(ch.isascii() and ch.isspace() for ch in grapheme):
                raise InventoryParseError(f"{self.lang}: grapheme contains whitespace")

    def __contains__(self, grapheme: object) -> bool:
        return grapheme in self.chars

    def __len__(self) -> int:
        return len(self.chars)

    @property
    def compounds(self) -> FrozenSet[str]:
        """Graphemes spanning more than one code point."""
        return frozenset(g for g in self.chars if len(g) > 1)

    def codepoints(self) -> FrozenSet[str]:
        """Every single code point occurring in some grapheme."""
        return frozenset(ch for grapheme in self.chars for ch in grapheme)

    def segment(self, text: str) -> List[str]:
        """Split text into graphemes, preferring two-code-point compounds.

        Code points outside the inventory become single-character segments.
        """
        compounds = self.compounds
        out: List[str] = []
        i = 0
        while i < len(text):
            if compounds and text[i : i + 2] in compounds:
                out.append(text[i : i + 2])
                i += 2
            else:
                out.append(text[i])
                i += 1
        return out


def parse_inventory(text: str, path: Optional[str] = None) -> ScriptInventory:
    """Parse inventory file content.

    Args:
        text: File content
        path: Source path used in error messages

    Returns:
        Validated ScriptInventory

    Raises:
        InventoryParseError: On malformed tokens, duplicates, unknown language codes
            or missing headers; the error carries the line number
    """
    lang: Optional[str] = None
    script_kind: Optional[ScriptKind] = None
    uses_zwnj: Optional[bool] = None
    chars: Dict[str, int] = {}
    diacritics: set[str] = set()
    notes: Dict[str, str] = {}

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        fields = [f.strip() for f in line.split("\t") if f.strip()]
        key = fields[0]
        values = fields[1:]
        if not values:
            raise InventoryParseError(f"missing value for {key!r}", path, line_no)

        if key == "lang":
            if values[0] not in SUPPORTED_LANGS:
                raise InventoryParseError(f"unknown language code {values[0]!r}", path, line_no)
            lang = values[0]
        elif key == "script_kind":
            try:
                script_kind = ScriptKind(values[0])
            except ValueError:
                raise InventoryParseError(
                    f"script_kind must be 'abjad' or 'alphabet', got {values[0]!r}", path, line_no
                )
        elif key == "uses_zwnj":
            if values[0] not in ("true", "false"):
                raise InventoryParseError(
                    f"uses_zwnj must be 'true' or 'false', got {values[0]!r}", path, line_no
                )
            uses_zwnj = values[0] == "true"
        elif key in ("char", "diacritic"):
            try:
                grapheme = parse_codepoints(values[0])
            except ValueError as e:
                raise InventoryParseError(str(e), path, line_no)
            if len(grapheme) > MAX_GRAPHEME_CODEPOINTS:
                raise InventoryParseError(
                    f"grapheme {values[0]} spans more than {MAX_GRAPHEME_CODEPOINTS} code points",
                    path,
                    line_no,
                )
            if any(ch.isascii() and ch.isspace() for ch in grapheme):
                raise InventoryParseError(
                    f"grapheme {values[0]} contains whitespace", path, line_no
                )
            if grapheme in chars:
                raise InventoryParseError(
                    f"duplicate grapheme {values[0]} (first declared on line {chars[grapheme]})",
                    path,
                    line_no,
                )
            chars[grapheme] = line_no
            if key == "diacritic":
                diacritics.add(grapheme)
            if len(values) > 1:
                notes[grapheme] = values[1]
        else:
            raise InventoryParseError(f"unknown declaration {key!r}", path, line_no)

    if lang is None:
        raise InventoryParseError("missing 'lang' declaration", path)
    if script_kind is None:
        raise InventoryParseError("missing 'script_kind' declaration", path)
    if uses_zwnj is None:
        raise InventoryParseError("missing 'uses_zwnj' declaration", path)
    if not chars:
        raise InventoryParseError("inventory declares no graphemes", path)

    inventory = ScriptInventory(
        lang=lang,
        chars=frozenset(chars),
        diacritics=frozenset(diacritics),
        uses_zwnj=uses_zwnj,
        script_kind=script_kind,
        notes=notes,
    )
    logger.debug(
        f"Parsed inventory {lang}: {len(inventory.chars)} graphemes, "
        f"{len(inventory.diacritics)} diacritics"
    )
    return inventory


def load_inventory(path: str | Path) -> ScriptInventory:
    """Load and validate an inventory file.

    Raises:
        InventoryParseError: If the file is missing, undecodable or invalid
    """
    file_path = Path(path)
    if not file_path.exists():
        raise InventoryParseError("inventory file not found", str(path))
    try:
        content = file_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InventoryParseError(f"invalid UTF-8 at byte {e.start}", str(path))
    return parse_inventory(content, path=str(path))


def load_shipped_inventory(lang: str, data_dir: Optional[Path] = None) -> ScriptInventory:
    """Load the inventory bundled with the package for ``lang``."""
    if lang not in SUPPORTED_LANGS:
        raise InventoryParseError(f"unknown language code {lang!r}")
    base = Path(data_dir) if data_dir is not None else DEFAULT_DATA_DIR
    return load_inventory(base / "inventories" / f"{lang}.inv")
