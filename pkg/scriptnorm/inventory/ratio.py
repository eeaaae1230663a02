"""Script ratio between two inventories under a mapping rule set."""

import logging
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

from scriptnorm.exceptions import InventoryParseError
from scriptnorm.inventory.inventory import LANGUAGE_METADATA, ScriptInventory
from scriptnorm.inventory.rules import MappingRuleSet, load_shipped_rules

logger = logging.getLogger(__name__)

# Pairs with bundled rule tables, as (source, dominant)
SHIPPED_PAIRS: Tuple[Tuple[str, str], ...] = (
    ("mzn", "fas"),
    ("azb", "fas"),
    ("glk", "fas"),
    ("kas", "urd"),
    ("hac", "ckb"),
    ("snd", "urd"),
    ("ckb", "fas"),
    ("kmr", "fas"),
    ("hac", "fas"),
    ("ckb", "arb"),
    ("kmr", "arb"),
    ("hac", "arb"),
)


def list_pairs(src_lang: Optional[str] = None) -> List[Tuple[str, str]]:
    """Pairs with a bundled rule table.

    Args:
        src_lang: Restrict to this source language, paired with its dominant
            languages in ``LANGUAGE_METADATA`` order

    Raises:
        InventoryParseError: If ``src_lang`` is not a supported language code
    """
    if src_lang is None:
        return list(SHIPPED_PAIRS)
    if src_lang not in LANGUAGE_METADATA:
        raise InventoryParseError(f"unknown language code {src_lang!r}")
    return [(src_lang, dom) for dom in LANGUAGE_METADATA[src_lang].dominant]


def uniquely_identity_mapped(
    rules: MappingRuleSet, shared: FrozenSet[str]
) -> FrozenSet[str]:
    """Shared graphemes that map only to themselves and are no other grapheme's target.

    Rule tables list only the graphemes that change or gain alternatives, so a
    shared grapheme with no rule of its own is read as carrying the implicit
    identity rule ``g -> g``. It joins M unless some other rule targets it. An
    explicit identity rule counts the same way. Multi-grapheme sources and
    targets never disqualify a single grapheme.
    """
    targeted_by_others: Dict[str, int] = {}
    for rule in rules.rules:
        for target in rule.targets:
            if len(target) == 1 and rule.source != target:
                targeted_by_others[target[0]] = targeted_by_others.get(target[0], 0) + 1

    members = set()
    for grapheme in shared:
        own_rules = rules.for_source((grapheme,))
        if any(not rule.is_identity for rule in own_rules):
            continue
        if grapheme in targeted_by_others:
            continue
        members.add(grapheme)
    return frozenset(members)


def script_ratio(rules: MappingRuleSet, a: ScriptInventory, b: ScriptInventory) -> float:
    """Similarity of two scripts under a rule set, in [0, 1].

    ``(|M| / |A ∪ B|) * (|M| / |A ∩ B|)`` where M holds the shared graphemes that
    are uniquely identity-mapped. Returns 0.0 when the scripts share nothing.
    """
    union = a.chars | b.chars
    shared = a.chars & b.chars
    if not shared or not union:
        return 0.0
    m = len(uniquely_identity_mapped(rules, shared))
    ratio = (m / len(union)) * (m / len(shared))
    logger.debug(
        f"script ratio {rules.src_lang}->{rules.dom_lang}: |M|={m} "
        f"|A∪B|={len(union)} |A∩B|={len(shared)} -> {ratio:.4f}"
    )
    return ratio


def ratio_table(data_dir: Optional[Path] = None) -> List[Tuple[str, str, float]]:
    """Script ratio for every bundled pair, in descending order (stable on ties)."""
    rows = []
    for src, dom in SHIPPED_PAIRS:
        rules = load_shipped_rules(src, dom, data_dir)
        assert rules.src_inventory is not None and rules.dom_inventory is not None
        rows.append((src, dom, script_ratio(rules, rules.src_inventory, rules.dom_inventory)))
    return sorted(rows, key=lambda row: -row[2])
