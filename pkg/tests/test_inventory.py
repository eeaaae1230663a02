"""Tests for script inventories, mapping rules and the script ratio.

This module tests inventory and rule file parsing, the error messages
carrying line numbers, and the script ratio on hand-computed and bundled
inputs.
"""

import pytest

from scriptnorm.exceptions import InventoryParseError, RuleCompileError
from scriptnorm.inventory import (
    LANGUAGE_METADATA,
    SUPPORTED_LANGS,
    MappingRule,
    MappingRuleSet,
    Position,
    ScriptKind,
    list_pairs,
    load_inventory,
    load_shipped_inventory,
    load_shipped_rules,
    parse_inventory,
    parse_rules,
    ratio_table,
    script_ratio,
)
from scriptnorm.inventory.codepoints import format_codepoints, parse_codepoints
from scriptnorm.inventory.ratio import uniquely_identity_mapped

ALEF, BEH, TEH, THEH = "ا", "ب", "ت", "ث"

# Script ratios of the bundled pairs, highest first
REFERENCE_RATIOS = [
    ("mzn", "fas", 0.976),
    ("azb", "fas", 0.909),
    ("glk", "fas", 0.909),
    ("kas", "urd", 0.87),
    ("hac", "ckb", 0.857),
    ("snd", "urd", 0.582),
    ("ckb", "fas", 0.35),
    ("kmr", "fas", 0.35),
    ("hac", "fas", 0.318),
    ("ckb", "arb", 0.254),
    ("kmr", "arb", 0.254),
    ("hac", "arb", 0.232),
]


def inventory_text(lang, chars, diacritics=(), uses_zwnj=False):
    """Render an inventory file for the given characters."""
    lines = [f"lang\t{lang}", "script_kind\tabjad", f"uses_zwnj\t{str(uses_zwnj).lower()}"]
    lines.extend(f"char\t{format_codepoints(ch)}" for ch in chars)
    lines.extend(f"diacritic\t{format_codepoints(ch)}" for ch in diacritics)
    return "\n".join(lines) + "\n"


@pytest.fixture
def abc_inventory():
    return parse_inventory(inventory_text("ckb", [ALEF, BEH, TEH]))


@pytest.fixture
def abd_inventory():
    return parse_inventory(inventory_text("fas", [ALEF, BEH, THEH]))


class TestCodepoints:
    """Tests for code-point tokens."""

    def test_parse_single_and_compound(self):
        """Test that single and '+'-joined tokens decode."""
        assert parse_codepoints("U+0627") == ALEF
        assert parse_codepoints("U+0627+U+064F") == ALEF + "ُ"

    def test_format_round_trips(self):
        """Test that formatting inverts parsing."""
        assert format_codepoints(ALEF + "ُ") == "U+0627+U+064F"

    @pytest.mark.parametrize("token", ["", "0627", "U+06", "U+D800", "U+0627+"])
    def test_malformed_tokens_rejected(self, token):
        """Test that malformed tokens raise ValueError."""
        with pytest.raises(ValueError):
            parse_codepoints(token)


class TestParseInventory:
    """Tests for inventory parsing."""

    def test_parse_valid_inventory(self):
        """Test that a well-formed inventory parses with its metadata."""
        text = inventory_text("kas", [ALEF, BEH], diacritics=["َ"], uses_zwnj=False)
        inventory = parse_inventory(text)

        assert inventory.lang == "kas"
        assert inventory.script_kind == ScriptKind.ABJAD
        assert inventory.uses_zwnj is False
        assert inventory.chars == frozenset({ALEF, BEH, "َ"})
        assert inventory.diacritics == frozenset({"َ"})

    def test_compound_grapheme_segmentation(self):
        """Test that compounds are preferred when segmenting."""
        compound = ALEF + "ُ"
        inventory = parse_inventory(
            inventory_text("ckb", [ALEF, BEH, compound], diacritics=["ُ"])
        )

        assert inventory.compounds == frozenset({compound})
        assert inventory.segment(compound + BEH) == [compound, BEH]
        assert inventory.segment("ُ" + ALEF) == ["ُ", ALEF]

    def test_comments_and_notes(self):
        """Test that comments are ignored and notes kept."""
        text = "# header\nlang\tfas\nscript_kind\tabjad\nuses_zwnj\ttrue\nchar\tU+0627\talef # x\n"
        inventory = parse_inventory(text)

        assert inventory.notes[ALEF] == "alef"
        assert inventory.uses_zwnj is True

    def test_duplicate_grapheme_reports_line(self):
        """Test that a duplicate grapheme error names the offending line."""
        text = inventory_text("fas", [ALEF, ALEF])

        with pytest.raises(InventoryParseError) as exc_info:
            parse_inventory(text, path="fas.inv")

        assert exc_info.value.line_no == 5
        assert "fas.inv:5" in str(exc_info.value)
        assert "duplicate" in str(exc_info.value)

    def test_unknown_language_code(self):
        """Test that an unsupported language code is rejected."""
        with pytest.raises(InventoryParseError) as exc_info:
            parse_inventory(inventory_text("xxx", [ALEF]))

        assert exc_info.value.line_no == 1
        assert "unknown language code" in str(exc_info.value)

    def test_missing_header(self):
        """Test that a missing declaration is reported."""
        with pytest.raises(InventoryParseError) as exc_info:
            parse_inventory("lang\tfas\nscript_kind\tabjad\nchar\tU+0627\n")

        assert "uses_zwnj" in str(exc_info.value)

    def test_malformed_token(self):
        """Test that a malformed code point is reported with its line."""
        with pytest.raises(InventoryParseError) as exc_info:
            parse_inventory("lang\tfas\nscript_kind\tabjad\nuses_zwnj\tfalse\nchar\tX+0627\n")

        assert exc_info.value.line_no == 4

    def test_overlong_grapheme_rejected(self):
        """Test that graphemes longer than two code points are rejected."""
        text = "lang\tfas\nscript_kind\tabjad\nuses_zwnj\tfalse\nchar\tU+0627+U+0628+U+062A\n"

        with pytest.raises(InventoryParseError):
            parse_inventory(text)

    def test_load_missing_file(self, tmp_path):
        """Test that a missing file raises InventoryParseError."""
        with pytest.raises(InventoryParseError) as exc_info:
            load_inventory(tmp_path / "missing.inv")

        assert "not found" in str(exc_info.value)


class TestShippedData:
    """Tests for the bundled inventories and rule tables."""

    @pytest.mark.parametrize("lang", sorted(SUPPORTED_LANGS))
    def test_every_inventory_loads(self, lang):
        """Test that every bundled inventory parses."""
        inventory = load_shipped_inventory(lang)

        assert inventory.lang == lang
        assert len(inventory) > 0

    @pytest.mark.parametrize("src,dom", list_pairs())
    def test_every_rule_table_compiles(self, src, dom):
        """Test that every bundled rule table compiles against both inventories."""
        rules = load_shipped_rules(src, dom)

        assert rules.src_lang == src
        assert rules.dom_lang == dom
        assert len(rules) > 0

    def test_twelve_pairs(self):
        """Test that twelve pairs are bundled."""
        assert len(list_pairs()) == 12

    def test_pairs_follow_language_metadata(self):
        """Test that the bundled pairs are exactly the metadata's dominant languages."""
        from_metadata = {
            (lang, dom) for lang, info in LANGUAGE_METADATA.items() for dom in info.dominant
        }

        assert from_metadata == set(list_pairs())

    def test_pairs_for_one_source(self):
        """Test that a source language is paired with its dominant languages in order."""
        assert list_pairs("hac") == [("hac", "ckb"), ("hac", "fas"), ("hac", "arb")]
        assert list_pairs("kas") == [("kas", "urd")]
        assert list_pairs("fas") == []

    def test_pairs_for_unknown_language(self):
        """Test that an unknown source language is rejected."""
        with pytest.raises(InventoryParseError):
            list_pairs("xyz")

    @pytest.mark.parametrize("lang", sorted(SUPPORTED_LANGS))
    def test_inventory_headers_match_metadata(self, lang):
        """Test that each inventory header agrees with the language metadata."""
        inventory = load_shipped_inventory(lang)
        info = LANGUAGE_METADATA[lang]

        assert inventory.script_kind == info.script_kind
        assert inventory.uses_zwnj == info.uses_zwnj


class TestParseRules:
    """Tests for rule file compilation."""

    def test_parse_positions_and_alternatives(self, abc_inventory, abd_inventory):
        """Test that positions, alternatives and deletions parse."""
        text = "U+0627\tanywhere\tU+0627\nU+0628\tword_final\tU+0628|U+062B\nU+062A\t∅\n"
        rules = parse_rules(text, abc_inventory, abd_inventory)

        assert len(rules) == 3
        assert rules.rules[0].is_identity
        assert rules.rules[1].position == Position.WORD_FINAL
        assert rules.rules[1].targets == ((BEH,), (THEH,))
        assert rules.rules[2].position == Position.ANYWHERE
        assert rules.rules[2].targets == ((),)

    def test_unknown_target_grapheme(self, abc_inventory, abd_inventory):
        """Test that a target outside the dominant inventory is rejected."""
        with pytest.raises(RuleCompileError) as exc_info:
            parse_rules("U+0627\tanywhere\tU+062A\n", abc_inventory, abd_inventory)

        assert exc_info.value.line_no == 1
        assert "not in fas inventory" in str(exc_info.value)

    def test_duplicate_rule(self, abc_inventory, abd_inventory):
        """Test that the same source and position twice is rejected."""
        text = "U+0627\tU+0627\n# comment\nU+0627\tanywhere\tU+0628\n"

        with pytest.raises(RuleCompileError) as exc_info:
            parse_rules(text, abc_inventory, abd_inventory)

        assert exc_info.value.line_no == 3

    def test_unknown_position(self, abc_inventory, abd_inventory):
        """Test that an unknown position keyword is rejected."""
        with pytest.raises(RuleCompileError) as exc_info:
            parse_rules("U+0627\tmiddle\tU+0627\n", abc_inventory, abd_inventory)

        assert "unknown position" in str(exc_info.value)

    def test_empty_alternative(self, abc_inventory, abd_inventory):
        """Test that an empty alternative in the targets list is rejected."""
        with pytest.raises(RuleCompileError):
            parse_rules("U+0627\tanywhere\tU+0627||U+0628\n", abc_inventory, abd_inventory)

    def test_position_allows(self):
        """Test positional constraints on match spans."""
        assert Position.WORD_INITIAL.allows(0, 1, 3)
        assert not Position.WORD_INITIAL.allows(1, 2, 3)
        assert Position.WORD_FINAL.allows(2, 3, 3)
        assert not Position.WORD_FINAL.allows(0, 1, 3)
        assert Position.ANYWHERE.allows(1, 2, 3)

    def test_rule_rejects_duplicate_target(self):
        """Test that a rule may not list the same target twice."""
        with pytest.raises(RuleCompileError):
            MappingRule(source=(ALEF,), targets=((BEH,), (BEH,)))


class TestScriptRatio:
    """Tests for the script ratio."""

    def test_hand_computed_example(self, abc_inventory, abd_inventory):
        """Test the ratio on A={a,b,c}, B={a,b,d} with a->a and b->{b,d}."""
        rules = MappingRuleSet(
            "ckb",
            "fas",
            (
                MappingRule((ALEF,), ((ALEF,),)),
                MappingRule((BEH,), ((BEH,), (THEH,))),
            ),
        )

        assert script_ratio(rules, abc_inventory, abd_inventory) == pytest.approx(0.125)

    def test_symmetric_under_inverted_rules(self, abc_inventory, abd_inventory):
        """Test that swapping inventories with inverted rules keeps the ratio."""
        rules = MappingRuleSet(
            "ckb",
            "fas",
            (
                MappingRule((ALEF,), ((ALEF,),)),
                MappingRule((BEH,), ((BEH,), (THEH,))),
            ),
        )

        forward = script_ratio(rules, abc_inventory, abd_inventory)
        backward = script_ratio(rules.inverted(), abd_inventory, abc_inventory)

        assert forward == pytest.approx(backward)

    def test_identical_scripts_score_one(self, abc_inventory):
        """Test that identical scripts with no rules score exactly 1."""
        rules = MappingRuleSet("ckb", "fas", ())

        assert script_ratio(rules, abc_inventory, abc_inventory) == 1.0

    def test_disjoint_scripts_score_zero(self):
        """Test that scripts sharing nothing score 0."""
        a = parse_inventory(inventory_text("ckb", [ALEF]))
        b = parse_inventory(inventory_text("fas", [BEH]))

        assert script_ratio(MappingRuleSet("ckb", "fas", ()), a, b) == 0.0

    def test_second_target_lowers_ratio(self, abc_inventory, abd_inventory):
        """Test that giving a member of M a second target lowers the ratio."""
        base = MappingRuleSet("ckb", "fas", (MappingRule((ALEF,), ((ALEF,),)),))
        widened = MappingRuleSet("ckb", "fas", (MappingRule((ALEF,), ((ALEF,), (THEH,))),))

        assert script_ratio(widened, abc_inventory, abd_inventory) < script_ratio(
            base, abc_inventory, abd_inventory
        )

    def test_bundled_ratios_match_reference(self):
        """Test that every bundled ratio is within 0.05 of the reference table."""
        computed = {(src, dom): value for src, dom, value in ratio_table()}

        for src, dom, expected in REFERENCE_RATIOS:
            assert computed[(src, dom)] == pytest.approx(expected, abs=0.05), (src, dom)

    def test_bundled_ratio_order(self):
        """Test that the bundled ratios come out in the reference order."""
        table = ratio_table()

        assert [(src, dom) for src, dom, _ in table] == [
            (src, dom) for src, dom, _ in REFERENCE_RATIOS
        ]
        values = [value for _, _, value in table]
        assert values == sorted(values, reverse=True)

    def test_ckb_arb_below_ckb_fas(self):
        """Test that Sorani is closer to Persian than to Arabic."""
        computed = {(src, dom): value for src, dom, value in ratio_table()}

        assert computed[("ckb", "arb")] < computed[("ckb", "fas")]

    def test_rule_less_shared_grapheme_is_identity(self, abc_inventory, abd_inventory):
        """Test that a shared grapheme without a rule counts as identity-mapped."""
        rules = MappingRuleSet("ckb", "fas", (MappingRule((ALEF,), ((ALEF,),)),))

        assert uniquely_identity_mapped(rules, frozenset({ALEF, BEH})) == {ALEF, BEH}
        assert script_ratio(rules, abc_inventory, abd_inventory) == pytest.approx(0.5)

    def test_rule_less_grapheme_targeted_elsewhere_excluded(self, abc_inventory, abd_inventory):
        """Test that another grapheme's rule targeting a rule-less grapheme removes it from M."""
        rules = MappingRuleSet(
            "ckb",
            "fas",
            (
                MappingRule((ALEF,), ((ALEF,),)),
                MappingRule((TEH,), ((BEH,),)),
            ),
        )

        assert uniquely_identity_mapped(rules, frozenset({ALEF, BEH})) == {ALEF}
        assert script_ratio(rules, abc_inventory, abd_inventory) == pytest.approx(0.125)
