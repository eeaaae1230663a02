"""Tests for the scriptnorm command line."""

import pytest

from scriptnorm.alignment import CharAlignmentMatrix
from scriptnorm.cli.main import EXIT_DATA, EXIT_OK, EXIT_USAGE, dispatch
from scriptnorm.langid import load_test_set
from scriptnorm.noise import load_dataset_pairs
from scriptnorm.runtime.manifest import read_manifest

SENTENCES = [
    "ڕۆژ باش بۆ هەموو هاوڕێیان",
    "کوردستان وڵاتێکی جوانە و گەورەیە",
    "ئەم ڕۆژە زۆر گەرمە بۆ ئێمە",
    "زمانی کوردی زمانێکی دەوڵەمەندە بۆ هەموو",
    "بێ گومان ئەو ڕاست دەڵێت ئەمڕۆ",
    "ڕۆژنامەکان هەواڵ بڵاو دەکەنەوە",
]


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for name in (
        "SCRIPTNORM_LOG_LEVEL",
        "SCRIPTNORM_LOG_FORMAT",
        "SCRIPTNORM_THREADS",
        "SCRIPTNORM_DATA_DIR",
    ):
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "ckb.sentences.txt"
    path.write_text("".join(f"{s}\n" for s in SENTENCES), encoding="utf-8")
    return path


@pytest.fixture
def matrix(tmp_path):
    path = tmp_path / "ckb_fas.matrix.tsv"
    CharAlignmentMatrix.from_alternatives(
        "ckb", "fas", {"ڕ": ["ر"], "ە": ["ه"], "ۆ": ["و"], "ڵ": ["ل"], "ێ": ["ی"]}
    ).save(path)
    return path


def write_config(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestDispatch:
    """Tests for exit codes."""

    def test_unknown_command(self, capsys):
        """Test that an unknown subcommand is a usage error."""
        assert dispatch(["frobnicate"]) == EXIT_USAGE
        assert "frobnicate" in capsys.readouterr().err

    def test_missing_required_option(self):
        """Test that a missing option is a usage error."""
        assert dispatch(["score", "--hyp", "x.txt"]) == EXIT_USAGE

    def test_invalid_config_is_data_error(self, tmp_path):
        """Test that an invalid run config is a data error."""
        config = write_config(tmp_path, "seed: -1\n")

        assert dispatch(["--config", config, "ratio", "--all"]) == EXIT_DATA


class TestRatio:
    """Tests for the ratio command."""

    def test_single_pair(self, capsys):
        """Test one ratio line for ckb/arb."""
        assert dispatch(["ratio", "--src", "ckb", "--dom", "arb"]) == EXIT_OK

        src, dom, value = capsys.readouterr().out.strip().split("\t")
        assert (src, dom) == ("ckb", "arb")
        assert abs(float(value) - 0.254) <= 0.05

    def test_all_pairs(self, capsys):
        """Test that --all prints every bundled pair, highest first."""
        assert dispatch(["ratio", "--all"]) == EXIT_OK

        rows = [line.split("\t") for line in capsys.readouterr().out.strip().splitlines()]
        values = [float(v) for _, _, v in rows]
        assert len(rows) == 12
        assert values == sorted(values, reverse=True)

    def test_languages_from_config(self, tmp_path, capsys):
        """Test that languages can come from the run config."""
        config = write_config(tmp_path, "languages:\n  src_lang: ckb\n  dom_lang: fas\n")

        assert dispatch(["--config", config, "ratio"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("ckb\tfas\t")

    def test_languages_required(self):
        """Test that ratio without a source language is a usage error."""
        assert dispatch(["ratio", "--dom", "fas"]) == EXIT_USAGE

    def test_source_only_uses_dominant_languages(self, tmp_path, capsys):
        """Test that --src alone pairs the language with each of its dominant languages."""
        out = str(tmp_path / "r")

        assert dispatch(["ratio", "--src", "hac", "--output-dir", out]) == EXIT_OK

        rows = [line.split("\t") for line in capsys.readouterr().out.strip().splitlines()]
        assert [(src, dom) for src, dom, _ in rows] == [
            ("hac", "ckb"),
            ("hac", "fas"),
            ("hac", "arb"),
        ]

    def test_no_dominant_language(self):
        """Test that a language without dominant languages needs --dom."""
        assert dispatch(["ratio", "--src", "fas"]) == EXIT_USAGE

    def test_writes_manifest(self, tmp_path, capsys):
        """Test that ratio writes ratio.tsv and its manifest."""
        out = tmp_path / "r"
        args = ["ratio", "--src", "ckb", "--dom", "arb", "--output-dir", str(out)]

        assert dispatch(args) == EXIT_OK

        printed = capsys.readouterr().out
        assert (out / "ratio.tsv").read_text(encoding="utf-8") == printed
        manifest = read_manifest(out / "MANIFEST.ratio.tsv")
        assert manifest["pairs"] == "1"
        assert manifest["input.rules.ckb_arb"].endswith("ckb_arb.rules")
        assert "input.inventory.ckb.sha256" in manifest
        assert "output.ratio.tsv.sha256" in manifest


class TestNoise:
    """Tests for the noise command."""

    def run(self, matrix, corpus, out, *extra):
        return dispatch(
            [
                "noise",
                "--matrix",
                str(matrix),
                "--corpus",
                str(corpus),
                "--output-dir",
                str(out),
                *extra,
            ]
        )

    def test_seed_required(self, matrix, corpus, tmp_path):
        """Test that noise without a seed is a usage error."""
        assert self.run(matrix, corpus, tmp_path / "out", "--level", "100") == EXIT_USAGE

    def test_deterministic_outputs(self, matrix, corpus, tmp_path):
        """Test that two runs with one seed produce identical checksums."""
        first, second = tmp_path / "a", tmp_path / "b"

        assert self.run(matrix, corpus, first, "--level", "100", "--seed", "7") == EXIT_OK
        assert self.run(matrix, corpus, second, "--level", "100", "--seed", "7") == EXIT_OK

        manifests = [read_manifest(d / "MANIFEST.noise.tsv") for d in (first, second)]
        outputs = [{k: v for k, v in m.items() if k.startswith("output.")} for m in manifests]
        assert outputs[0] == outputs[1]
        assert "output.ckb_fas.100.tsv.sha256" in outputs[0]
        assert manifests[0]["seed"] == "7"
        name = "ckb_fas.100.tsv"
        assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_all_levels(self, matrix, corpus, tmp_path):
        """Test that the default level writes five datasets and the merged one."""
        out = tmp_path / "out"

        assert dispatch(
            [
                "--threads",
                "2",
                "noise",
                "--matrix",
                str(matrix),
                "--corpus",
                str(corpus),
                "--seed",
                "1",
                "--output-dir",
                str(out),
            ]
        ) == EXIT_OK

        names = sorted(p.name for p in out.glob("ckb_fas.*.tsv"))
        levels = ("100", "20", "40", "60", "80", "all")
        assert names == [f"ckb_fas.{level}.tsv" for level in levels]

    def test_level_from_config(self, matrix, corpus, tmp_path):
        """Test that the config's noise level and seed apply without flags."""
        config = write_config(tmp_path, "seed: 5\nnoise:\n  level: 40\n")
        out = tmp_path / "out"

        assert dispatch(
            [
                "--config",
                config,
                "noise",
                "--matrix",
                str(matrix),
                "--corpus",
                str(corpus),
                "--output-dir",
                str(out),
            ]
        ) == EXIT_OK
        assert [p.name for p in out.glob("ckb_fas.*.tsv")] == ["ckb_fas.40.tsv"]

    def test_empty_corpus_is_data_error(self, matrix, tmp_path):
        """Test that an empty corpus exits with the data error code."""
        empty = tmp_path / "empty.txt"
        empty.write_text("", encoding="utf-8")

        assert self.run(matrix, empty, tmp_path / "out", "--seed", "1") == EXIT_DATA

    def test_malformed_matrix_is_data_error(self, corpus, tmp_path):
        """Test that an unreadable matrix exits with the data error code."""
        bad = tmp_path / "bad.matrix.tsv"
        bad.write_text("U+0695\n", encoding="utf-8")

        assert self.run(bad, corpus, tmp_path / "out", "--seed", "1") == EXIT_DATA


class TestEvalAndScore:
    """Tests for eval and score."""

    def test_baseline(self, matrix, corpus, tmp_path, capsys):
        """Test that a baseline report line is printed and curve.csv written."""
        out = tmp_path / "out"
        dispatch(
            [
                "noise",
                "--matrix",
                str(matrix),
                "--corpus",
                str(corpus),
                "--level",
                "100",
                "--seed",
                "3",
                "--output-dir",
                str(out),
            ]
        )
        capsys.readouterr()

        dataset = str(out / "ckb_fas.100.tsv")
        code = dispatch(["eval", "--baseline", "--dataset", dataset, "--output-dir", str(out)])

        assert code == EXIT_OK
        label, bleu, chrf, seq_acc, n_pairs = capsys.readouterr().out.strip().split("\t")
        assert label == "ckb_fas.100.tsv"
        assert float(bleu) < 100.0
        assert int(n_pairs) == len(SENTENCES)
        assert (out / "curve.csv").read_text(encoding="utf-8").startswith("label,level,")
        assert (out / "MANIFEST.eval.tsv").exists()

    def test_baseline_needs_dataset(self):
        """Test that --baseline without data is a usage error."""
        assert dispatch(["eval", "--baseline"]) == EXIT_USAGE

    def test_score(self, corpus, tmp_path, capsys):
        """Test scoring a hypothesis file against itself."""
        out = tmp_path / "out"

        code = dispatch(
            ["score", "--hyp", str(corpus), "--ref", str(corpus), "--output-dir", str(out)]
        )

        assert code == EXIT_OK
        assert capsys.readouterr().out.strip().endswith("\t1.0000\t6")
        assert (out / "score.tsv").exists()


class TestPipelineCommands:
    """Tests for clean, normalize and the language-id commands."""

    def test_clean(self, tmp_path):
        """Test that clean writes its three outputs and a manifest."""
        raw = tmp_path / "raw.txt"
        raw.write_text(
            "see https://x.y " + SENTENCES[1] + "\nEnglish only\n" + SENTENCES[2] + "\n",
            encoding="utf-8",
        )
        out = tmp_path / "out"

        code = dispatch(["clean", "--lang", "ckb", "--input", str(raw), "--output-dir", str(out)])

        assert code == EXIT_OK
        assert (out / "ckb.clean.txt").read_text(encoding="utf-8").splitlines() == SENTENCES[1:3]
        assert (out / "ckb.sentences.txt").exists()
        assert (out / "ckb.removed.tsv").exists()
        assert read_manifest(out / "MANIFEST.clean.tsv")["clean_lines"] == "2"

    def test_normalize(self, matrix, corpus, tmp_path):
        """Test that normalize writes one output line per input line."""
        noisy = tmp_path / "noisy.txt"
        noisy.write_text("روژ باش\nکوردستان\n", encoding="utf-8")
        out = tmp_path / "out"

        code = dispatch(
            [
                "normalize",
                "--matrix",
                str(matrix),
                "--input",
                str(noisy),
                "--lm-corpus",
                str(corpus),
                "--output-dir",
                str(out),
            ]
        )

        assert code == EXIT_OK
        assert len((out / "normalized.txt").read_text(encoding="utf-8").splitlines()) == 2
        assert (out / "channel.tsv").exists()
        assert (out / "lm.tsv").exists()

    def test_normalize_needs_one_lm_source(self, matrix, corpus, tmp_path):
        """Test that normalize requires exactly one of --lm-corpus and --lm."""
        code = dispatch(["normalize", "--matrix", str(matrix), "--input", str(corpus)])

        assert code == EXIT_USAGE

    def test_langid_train_and_eval(self, tmp_path, capsys):
        """Test training and evaluating a small language identifier."""
        ckb = tmp_path / "ckb.txt"
        fas = tmp_path / "fas.txt"
        ckb.write_text(
            "".join(f"{s} {i}\n" for i in range(4) for s in SENTENCES), encoding="utf-8"
        )
        fas.write_text(
            "".join(f"امروز هوا خیلی خوب است {i}\n" for i in range(24)), encoding="utf-8"
        )
        config = write_config(tmp_path, "langid:\n  buckets: 4096\n  epochs: 5\n")
        out = tmp_path / "out"

        train = dispatch(
            [
                "--config",
                config,
                "langid-train",
                "--clean",
                f"ckb={ckb}",
                "--clean",
                f"fas={fas}",
                "--seed",
                "3",
                "--output-dir",
                str(out),
            ]
        )
        evaluate = dispatch(
            [
                "langid-eval",
                "--model",
                str(out / "langid.bin"),
                "--test",
                str(out / "langid.test.tsv"),
                "--output-dir",
                str(out),
            ]
        )

        assert train == EXIT_OK
        assert evaluate == EXIT_OK
        assert "macro F@1" in capsys.readouterr().out
        assert (out / "langid.eval.csv").exists()
        assert read_manifest(out / "MANIFEST.langid-train.tsv")["buckets"] == "4096"

    def test_langid_merged_writes_noisy_split(self, matrix, corpus, tmp_path):
        """Test that a merged setup also freezes the noisy part of its test split."""
        fas = tmp_path / "fas.txt"
        fas.write_text(
            "".join(f"امروز هوا خیلی خوب است {i}\n" for i in range(40)), encoding="utf-8"
        )
        data = tmp_path / "data"
        noise = ["noise", "--matrix", str(matrix), "--corpus", str(corpus), "--seed", "2"]
        assert dispatch([*noise, "--output-dir", str(data)]) == EXIT_OK
        config = write_config(tmp_path, "langid:\n  buckets: 4096\n")
        out = tmp_path / "out"

        code = dispatch(
            [
                "--config",
                config,
                "langid-train",
                "--setup",
                "merged",
                "--clean",
                f"ckb={corpus}",
                "--noisy",
                f"ckb={data / 'ckb_fas.all.tsv'}",
                "--clean",
                f"fas={fas}",
                "--seed",
                "3",
                "--epochs",
                "2",
                "--output-dir",
                str(out),
            ]
        )

        assert code == EXIT_OK
        noisy = {n for n, _ in load_dataset_pairs(data / "ckb_fas.all.tsv")}
        split = load_test_set((out / "langid.test.noisy.tsv").read_text(encoding="utf-8"))
        assert all(sentence in noisy for sentence, label in split if label == "ckb")
        assert {label for _, label in split} <= {"ckb", "fas"}
        manifest = read_manifest(out / "MANIFEST.langid-train.tsv")
        assert manifest["test_noisy"] == str(len(split))

    def test_langid_bad_label_path(self, tmp_path):
        """Test that a --clean value without '=' is a usage error."""
        assert dispatch(["langid-train", "--clean", "ckb", "--seed", "1"]) == EXIT_USAGE
