"""Positional grapheme mapping rules between a source script and a dominant script.

Rule files are UTF-8, one rule per line, tab-separated::

    <source>    <position>    <target1>[|<target2>...]

``source`` and each target are code-point tokens; consecutive code points are
segmented into graphemes with the relevant inventory, so ``U+0626+U+06C6``
is the two-grapheme source ئۆ in Sorani. A target of ``∅`` deletes the source.
``position`` is one of ``anywhere``, ``word_initial`` or ``word_final``.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from scriptnorm.exceptions import RuleCompileError
from scriptnorm.inventory.codepoints import DELETION_TOKEN, format_codepoints, parse_codepoints
from scriptnorm.inventory.inventory import (
    DEFAULT_DATA_DIR,
    ScriptInventory,
    load_shipped_inventory,
)

logger = logging.getLogger(__name__)

GraphemeSeq = Tuple[str, ...]


class Position(str, Enum):
    """Where in a word a rule may fire."""

    ANYWHERE = "anywhere"
    WORD_INITIAL = "word_initial"
    WORD_FINAL = "word_final"

    def allows(self, start: int, end: int, word_len: int) -> bool:
        """Whether a match spanning ``[start, end)`` of a word satisfies the constraint."""
        if self is Position.WORD_INITIAL:
            return start == 0
        if self is Position.WORD_FINAL:
            return end == word_len
        return True


@dataclass(frozen=True)
class MappingRule:
    """One source grapheme sequence and its ordered replacement alternatives.

    Attributes:
        source: One or two graphemes of the source script
        targets: Alternatives in the dominant script, each 0-2 graphemes
            (the empty tuple is a deletion)
        position: Positional constraint
    """

    source: GraphemeSeq
    targets: Tuple[GraphemeSeq, ...]
    position: Position = Position.ANYWHERE

    def __post_init__(self) -> None:
        if not 1 <= len(self.source) <= 2:
            raise RuleCompileError(f"rule source must have 1-2 graphemes, got {self.source!r}")
        if not self.targets:
            raise RuleCompileError(f"rule for {self.label} has an empty targets list")
        if len(set(self.targets)) != len(self.targets):
            raise RuleCompileError(f"rule for {self.label} lists a target twice")
        for target in self.targets:
            if len(target) > 2:
                raise RuleCompileError(f"rule for {self.label} has a target over 2 graphemes")

    @property
    def label(self) -> str:
        return format_codepoints("".join(self.source))

    @property
    def is_identity(self) -> bool:
        """True when the only alternative is the source itself."""
        return self.targets == (self.source,)


@dataclass(frozen=True)
class MappingRuleSet:
    """Rules mapping ``src_lang`` graphemes onto ``dom_lang`` graphemes.

    Attributes:
        src_lang: Source language code
        dom_lang: Dominant language code
        rules: Rules in file order
        src_inventory: Inventory the sources were validated against
        dom_inventory: Inventory the targets were validated against
    """

    src_lang: str
    dom_lang: str
    rules: Tuple[MappingRule, ...]
    src_inventory: Optional[ScriptInventory] = field(default=None, compare=False)
    dom_inventory: Optional[ScriptInventory] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        seen: Dict[Tuple[GraphemeSeq, Position], MappingRule] = {}
        for rule in self.rules:
            key = (rule.source, rule.position)
            if key in seen:
                raise RuleCompileError(
                    f"duplicate rule for source {rule.label} at position {rule.position.value}"
                )
            seen[key] = rule
        if self.src_inventory is not None or self.dom_inventory is not None:
            for rule in self.rules:
                _validate_rule(rule, self.src_inventory, self.dom_inventory)
        index: Dict[GraphemeSeq, List[MappingRule]] = defaultdict(list)
        for rule in self.rules:
            index[rule.source].append(rule)
        object.__setattr__(self, "_by_source", dict(index))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[MappingRule]:
        return iter(self.rules)

    def for_source(self, source: GraphemeSeq) -> List[MappingRule]:
        """All rules whose source equals ``source``, in file order."""
        return list(self._by_source.get(source, ()))  # type: ignore[attr-defined]

    def applicable(self, source: GraphemeSeq, start: int, word_len: int) -> List[MappingRule]:
        """Rules for ``source`` whose position constraint holds at ``start``."""
        end = start + len(source)
        return [r for r in self.for_source(source) if r.position.allows(start, end, word_len)]

    def inverted(self) -> "MappingRuleSet":
        """Swap direction: every non-empty target maps back to its sources.

        Deletion targets have no inverse and are dropped. Sources mapping to the
        same target at the same position are merged into one rule.
        """
        grouped: Dict[Tuple[GraphemeSeq, Position], List[GraphemeSeq]] = defaultdict(list)
        order: List[Tuple[GraphemeSeq, Position]] = []
        for rule in self.rules:
            for target in rule.targets:
                if not target:
                    continue
                key = (target, rule.position)
                if key not in grouped:
                    order.append(key)
                if rule.source not in grouped[key]:
                    grouped[key].append(rule.source)
        inverse = tuple(
            MappingRule(source=key[0], targets=tuple(grouped[key]), position=key[1])
            for key in order
        )
        return MappingRuleSet(
            src_lang=self.dom_lang,
            dom_lang=self.src_lang,
            rules=inverse,
            src_inventory=self.dom_inventory,
            dom_inventory=self.src_inventory,
        )


def _validate_rule(
    rule: MappingRule,
    src: Optional[ScriptInventory],
    dom: Optional[ScriptInventory],
) -> None:
    if src is not None:
        for grapheme in rule.source:
            if grapheme not in src:
                raise RuleCompileError(
                    f"source grapheme {format_codepoints(grapheme)} not in {src.lang} inventory"
                )
    if dom is not None:
        for target in rule.targets:
            for grapheme in target:
                if grapheme not in dom:
                    raise RuleCompileError(
                        f"target grapheme {format_codepoints(grapheme)} "
                        f"not in {dom.lang} inventory"
                    )


def _segment_token(token: str, inventory: ScriptInventory, role: str) -> GraphemeSeq:
    text = parse_codepoints(token)
    graphemes = tuple(inventory.segment(text))
    for grapheme in graphemes:
        if grapheme not in inventory:
            raise ValueError(
                f"{role} grapheme {format_codepoints(grapheme)} not in {inventory.lang} inventory"
            )
    return graphemes


def parse_rules(
    text: str,
    src: ScriptInventory,
    dom: ScriptInventory,
    path: Optional[str] = None,
) -> MappingRuleSet:
    """Parse and validate rule file content against both inventories.

    Raises:
        RuleCompileError: Unknown grapheme, duplicate (source, position), empty
            targets list or malformed line; carries the line number
    """
    rules: List[MappingRule] = []
    seen: Dict[Tuple[GraphemeSeq, Position], int] = {}

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split("\t") if f.strip()]
        if len(fields) == 2:
            fields = [fields[0], Position.ANYWHERE.value, fields[1]]
        if len(fields) != 3:
            raise RuleCompileError(
                "expected '<source>\\t<position>\\t<targets>'", path, line_no
            )
        source_token, position_token, targets_token = fields

        try:
            position = Position(position_token)
        except ValueError:
            raise RuleCompileError(f"unknown position {position_token!r}", path, line_no)

        try:
            source = _segment_token(source_token, src, "source")
            targets: List[GraphemeSeq] = []
            for alternative in targets_token.split("|"):
                alternative = alternative.strip()
                if not alternative:
                    raise ValueError("empty target alternative")
                if alternative == DELETION_TOKEN:
                    targets.append(())
                else:
                    targets.append(_segment_token(alternative, dom, "target"))
        except ValueError as e:
            raise RuleCompileError(str(e), path, line_no)

        key = (source, position)
        if key in seen:
            raise RuleCompileError(
                f"duplicate rule for {source_token} at {position.value} "
                f"(first on line {seen[key]})",
                path,
                line_no,
            )
        seen[key] = line_no

        try:
            rules.append(MappingRule(source=source, targets=tuple(targets), position=position))
        except RuleCompileError as e:
            raise RuleCompileError(str(e), path, line_no)

    rule_set = MappingRuleSet(
        src_lang=src.lang,
        dom_lang=dom.lang,
        rules=tuple(rules),
        src_inventory=src,
        dom_inventory=dom,
    )
    logger.debug(f"Compiled {len(rules)} rules {src.lang} -> {dom.lang}")
    return rule_set


def compile_rules(path: str | Path, src: ScriptInventory, dom: ScriptInventory) -> MappingRuleSet:
    """Load a rule file and validate every rule against both inventories.

    Args:
        path: Rule file path
        src: Source-language inventory
        dom: Dominant-language inventory

    Returns:
        Validated MappingRuleSet

    Raises:
        RuleCompileError: If the file is missing or any rule is invalid
    """
    file_path = Path(path)
    if not file_path.exists():
        raise RuleCompileError("rule file not found", str(path))
    try:
        content = file_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise RuleCompileError(f"invalid UTF-8 at byte {e.start}", str(path))
    return parse_rules(content, src, dom, path=str(path))


def load_shipped_rules(
    src_lang: str, dom_lang: str, data_dir: Optional[Path] = None
) -> MappingRuleSet:
    """Load a bundled rule table together with both bundled inventories."""
    base = Path(data_dir) if data_dir is not None else DEFAULT_DATA_DIR
    src = load_shipped_inventory(src_lang, base)
    dom = load_shipped_inventory(dom_lang, base)
    return compile_rules(base / "rules" / f"{src_lang}_{dom_lang}.rules", src, dom)
