"""Tests for the channel model, the character LM and beam decoding."""

import logging
import math

import numpy as np
import pytest

from scriptnorm.alignment import CharAlignmentMatrix, MatrixEntry
from scriptnorm.exceptions import NormalizerError
from scriptnorm.inventory import load_shipped_inventory
from scriptnorm.metrics import corpus_bleu
from scriptnorm.noise import derive_rng, inject_noise
from scriptnorm.normalizer import (
    ChannelModel,
    CharLM,
    beam_normalize,
    fit_channel,
    fit_lm,
    normalize_lines,
    score_hypotheses,
)

CLEAN = [
    "ڕۆژ باش بۆ هەموو هاوڕێیان",
    "کوردستان وڵاتێکی جوانە",
    "ئەم ڕۆژە زۆر گەرمە",
    "زمانی کوردی زمانێکی دەوڵەمەندە",
    "بێ گومان ئەو ڕاست دەڵێت",
    "ڕۆژنامەکان هەواڵ بڵاو دەکەنەوە",
]

WORDS = sorted({word for sentence in CLEAN for word in sentence.split()})

# One noisy letter per clean letter, none of them used in clean text
BIJECTIVE = {"ڕ": ["ڑ"], "ۆ": ["ۇ"], "ڵ": ["ڷ"], "ێ": ["ې"], "ە": ["ہ"]}

# Noisy letters that are also ordinary letters of the clean text
OVERLAPPING = {"ڕ": ["ر"], "ۆ": ["و"], "ڵ": ["ل"], "ێ": ["ی", "ي"], "ە": ["ه", "ة"]}


def generated_corpus(n, seed):
    """Random sentences of four to eight words drawn from the clean fixture."""
    rng = np.random.default_rng(seed)
    return [" ".join(rng.choice(WORDS, size=int(rng.integers(4, 9)))) for _ in range(n)]


def noised(sentences, matrix, level, seed=3):
    return [
        inject_noise(s, matrix, level, derive_rng(seed, level, i)) for i, s in enumerate(sentences)
    ]


@pytest.fixture
def latin_matrix():
    """Clean letters mapped to characters the clean corpus never contains."""
    return CharAlignmentMatrix.from_alternatives(
        "ckb", "fas", {"ڕ": ["r"], "ۆ": ["o"], "ڵ": ["l"]}
    )


@pytest.fixture
def lm():
    return fit_lm(CLEAN, order=5, alpha=0.1)


class TestFitChannel:
    """Tests for fit_channel."""

    def test_inverts_entries(self):
        """Test that s -> t becomes t -> s and every grapheme maps to itself."""
        matrix = CharAlignmentMatrix.from_alternatives("ckb", "fas", {"ڕ": ["ر"]})

        channel = fit_channel(matrix)

        assert channel.options(("ر",)) == ((("ر",), 1.0), (("ڕ",), 1.0))
        assert channel.options(("ڕ",)) == ((("ڕ",), 1.0),)
        assert channel.matrix_checksum == matrix.checksum()

    def test_scores_become_weights(self):
        """Test that matrix scores carry over and self_weight sets identities."""
        matrix = CharAlignmentMatrix(
            "ckb",
            "fas",
            {
                ("a",): (MatrixEntry(("x",), 0.4),),
                ("b",): (MatrixEntry(("x",), 0.7),),
            },
        )

        channel = fit_channel(matrix, self_weight=0.3)

        assert channel.options(("x",)) == ((("a",), 0.4), (("b",), 0.7), (("x",), 0.3))

    def test_deletions_skipped(self):
        """Test that deletion entries contribute no channel key."""
        matrix = CharAlignmentMatrix(
            "kas", "urd", {("َ",): (MatrixEntry((), 0.5),), ("a",): (MatrixEntry(("b",), 1.0),)}
        )

        channel = fit_channel(matrix)

        assert () not in channel.candidates
        assert channel.options(("b",)) == ((("a",), 1.0), (("b",), 1.0))

    def test_inventory_identities(self):
        """Test that every inventory character can be copied."""
        matrix = CharAlignmentMatrix.from_alternatives("ckb", "fas", {"ڕ": ["ر"]})
        inventory = load_shipped_inventory("ckb")

        channel = fit_channel(matrix, inventory=inventory)

        for ch in inventory.chars:
            assert ((ch,), 1.0) in channel.options((ch,))

    def test_identity_only_matrix(self):
        """Test that a matrix with only identity rows still gives a copy channel."""
        matrix = CharAlignmentMatrix("kmr", "fas", identity={("ا",): 1.0})

        channel = fit_channel(matrix)

        assert channel.options(("ا",)) == ((("ا",), 1.0),)

    def test_empty_matrix(self):
        """Test that an empty matrix raises NormalizerError."""
        with pytest.raises(NormalizerError):
            fit_channel(CharAlignmentMatrix("ckb", "fas"))

    @pytest.mark.parametrize("self_weight", [0.0, -1.0])
    def test_self_weight_positive(self, latin_matrix, self_weight):
        """Test that non-positive self weights are rejected."""
        with pytest.raises(NormalizerError):
            fit_channel(latin_matrix, self_weight=self_weight)

    def test_tsv_round_trip(self, latin_matrix, tmp_path):
        """Test that a saved channel loads back equal."""
        channel = fit_channel(latin_matrix, self_weight=0.5)
        path = tmp_path / "channel.tsv"

        channel.save(path)

        assert ChannelModel.load(path) == channel

    def test_malformed_line(self):
        """Test that a short line is rejected."""
        with pytest.raises(NormalizerError):
            ChannelModel.from_tsv("#src_lang\tckb\nU+0631\t1.0\n")


class TestCharLM:
    """Tests for the character language model."""

    def test_distributions_sum_to_one(self, lm):
        """Test that seen and unseen contexts both define distributions."""
        for history in [lm.start_history(), lm.advance(lm.start_history(), "ڕ"), "qqqq"]:
            total = sum(math.exp(lm.log_prob(history, ch)) for ch in lm.vocab)
            assert total == pytest.approx(1.0)

    def test_training_sentence_beats_scrambled(self, lm):
        """Test that a seen sentence is more probable than its reversal."""
        sentence = CLEAN[2]

        assert lm.score(sentence) > lm.score(sentence[::-1])

    def test_unknown_characters_share_one_symbol(self, lm):
        """Test that all unseen characters get the same probability."""
        history = lm.start_history()

        assert lm.log_prob(history, "x") == lm.log_prob(history, "y")

    def test_inventory_extends_vocabulary(self):
        """Test that inventory code points join the vocabulary."""
        inventory = load_shipped_inventory("ckb")

        lm = fit_lm(["ئا"], order=3, inventory=inventory)

        assert set(inventory.codepoints()) <= lm.vocab

    def test_order_one(self):
        """Test the unigram model has no history."""
        lm = fit_lm(["ab"], order=1)

        assert lm.advance("", "a") == ""
        assert lm.log_prob("", "a") == pytest.approx(math.log(1.1 / (3 + 0.1 * 4)))

    def test_empty_corpus(self):
        """Test that an empty corpus raises NormalizerError."""
        with pytest.raises(NormalizerError):
            fit_lm(["", ""])

    @pytest.mark.parametrize("kwargs", [{"order": 0}, {"alpha": 0.0}])
    def test_invalid_parameters(self, kwargs):
        """Test that order and alpha are validated."""
        with pytest.raises(NormalizerError):
            CharLM(**kwargs)

    def test_tsv_round_trip(self, lm, tmp_path):
        """Test that a saved LM scores identically after loading."""
        path = tmp_path / "lm.tsv"
        lm.save(path)

        loaded = CharLM.load(path)

        assert loaded.vocab == lm.vocab
        assert loaded.counts == lm.counts
        for sentence in CLEAN:
            assert loaded.score(sentence) == pytest.approx(lm.score(sentence))


class TestDecoder:
    """Tests for beam decoding."""

    def test_recovers_fully_noised_corpus(self, latin_matrix, lm):
        """Test that substituted characters absent from the clean corpus are restored."""
        channel = fit_channel(latin_matrix)
        noisy = [
            inject_noise(s, latin_matrix, 100, derive_rng(1, 100, i)) for i, s in enumerate(CLEAN)
        ]
        assert all(n != c for n, c in zip(noisy, CLEAN))

        restored = normalize_lines(noisy, channel, lm, beam_width=8, threads=2)

        assert restored == CLEAN

    def test_clean_text_left_alone(self, latin_matrix, lm):
        """Test that already clean sentences are copied."""
        channel = fit_channel(latin_matrix)

        assert normalize_lines(CLEAN, channel, lm) == CLEAN

    def test_uncovered_characters_copied(self, latin_matrix, lm):
        """Test that characters without channel keys pass through."""
        channel = fit_channel(latin_matrix)

        assert beam_normalize("123 !", channel, lm) == "123 !"

    def test_empty_input(self, latin_matrix, lm):
        """Test that an empty line stays empty."""
        assert beam_normalize("", fit_channel(latin_matrix), lm) == ""

    def test_beam_width_validated(self, latin_matrix, lm):
        """Test that a beam width below one is rejected."""
        with pytest.raises(NormalizerError):
            beam_normalize("r", fit_channel(latin_matrix), lm, beam_width=0)

    def test_deterministic(self, latin_matrix, lm):
        """Test that repeated decoding gives the same output."""
        channel = fit_channel(latin_matrix)
        noisy = "ro l"

        assert beam_normalize(noisy, channel, lm, 1) == beam_normalize(noisy, channel, lm, 1)

    def test_checksum_mismatch_warns(self, latin_matrix, caplog):
        """Test that a channel and LM from different matrices produce a warning."""
        channel = fit_channel(latin_matrix)
        lm = fit_lm(CLEAN, matrix_checksum="0" * 64)

        with caplog.at_level(logging.WARNING):
            normalize_lines(["باش"], channel, lm)

        assert any("different alignment matrices" in r.getMessage() for r in caplog.records)

    def test_score_hypotheses(self, tmp_path):
        """Test that hypothesis files are scored against references."""
        hyp = tmp_path / "hyp.txt"
        ref = tmp_path / "ref.txt"
        hyp.write_text("\n".join(CLEAN) + "\n", encoding="utf-8")
        ref.write_text("\n".join(CLEAN) + "\n", encoding="utf-8")

        report = score_hypotheses(hyp, ref)

        assert report.seq_acc == 1.0
        assert report.n_pairs == len(CLEAN)


@pytest.fixture(scope="module")
def large_corpus():
    return generated_corpus(1000, seed=11)


@pytest.fixture(scope="module")
def large_lm(large_corpus):
    return fit_lm(large_corpus, order=5, alpha=0.1)


class TestRoundTrip:
    """Tests for noising a generated corpus and decoding it back."""

    @pytest.fixture(scope="class")
    def bijective(self):
        return CharAlignmentMatrix.from_alternatives("ckb", "fas", BIJECTIVE)

    @pytest.fixture(scope="class")
    def fully_noised(self, large_corpus, bijective):
        return noised(large_corpus, bijective, 100)

    def test_bijective_recovery(self, large_corpus, large_lm, bijective, fully_noised):
        """Test that at least 99% of 1000 fully noised sentences are restored exactly."""
        assert sum(n != c for n, c in zip(fully_noised, large_corpus)) > 900

        restored = normalize_lines(fully_noised, fit_channel(bijective), large_lm, beam_width=8)

        exact = sum(r == c for r, c in zip(restored, large_corpus))
        assert exact / len(large_corpus) >= 0.99

    def test_wider_beam_not_worse(self, large_corpus, large_lm, bijective, fully_noised):
        """Test that width 8 scores at least the BLEU of greedy decoding."""
        channel = fit_channel(bijective)

        greedy = normalize_lines(fully_noised, channel, large_lm, beam_width=1)
        wide = normalize_lines(fully_noised, channel, large_lm, beam_width=8)

        assert corpus_bleu(wide, large_corpus) >= corpus_bleu(greedy, large_corpus)

    @pytest.mark.parametrize("level", [40, 60, 80, 100])
    def test_beats_copy_baseline(self, large_corpus, large_lm, level):
        """Test that decoding beats copying the noisy text when noise hits real letters."""
        matrix = CharAlignmentMatrix.from_alternatives("ckb", "fas", OVERLAPPING)
        clean = large_corpus[:200]
        noisy = noised(clean, matrix, level)

        restored = normalize_lines(noisy, fit_channel(matrix), large_lm, beam_width=8)

        assert corpus_bleu(restored, clean) > corpus_bleu(noisy, clean)
