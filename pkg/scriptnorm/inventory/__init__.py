"""Script inventories, mapping rules and the script ratio."""

from scriptnorm.inventory.inventory import (
    LANGUAGE_METADATA,
    SUPPORTED_LANGS,
    LanguageInfo,
    ScriptInventory,
    ScriptKind,
    load_inventory,
    load_shipped_inventory,
    parse_inventory,
)
from scriptnorm.inventory.rules import (
    MappingRule,
    MappingRuleSet,
    Position,
    compile_rules,
    load_shipped_rules,
    parse_rules,
)
from scriptnorm.inventory.ratio import SHIPPED_PAIRS, list_pairs, ratio_table, script_ratio

__all__ = [
    "LANGUAGE_METADATA",
    "SUPPORTED_LANGS",
    "LanguageInfo",
    "ScriptInventory",
    "ScriptKind",
    "load_inventory",
    "load_shipped_inventory",
    "parse_inventory",
    "MappingRule",
    "MappingRuleSet",
    "Position",
    "compile_rules",
    "load_shipped_rules",
    "parse_rules",
    "SHIPPED_PAIRS",
    "list_pairs",
    "ratio_table",
    "script_ratio",
]
