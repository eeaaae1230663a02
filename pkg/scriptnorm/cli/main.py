"""CLI interface for scriptnorm.

Every subcommand runs one pipeline stage, writes its outputs into an output
directory and records a ``MANIFEST.<command>.tsv`` next to them with the
config hash, seed, input and output checksums and counts.
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click

from scriptnorm.alignment.matrix import CharAlignmentMatrix, build_alignment_matrix
from scriptnorm.alignment.spelling_pairs import (
    Provenance,
    SpellingPair,
    extract_spelling_pairs,
    load_bilingual_dictionary,
    load_lexicon,
    load_pairs,
    save_pairs,
)
from scriptnorm.config.environment import Settings
from scriptnorm.config.loader import ConfigLoader, config_hash
from scriptnorm.config.schema import RunConfig
from scriptnorm.corpus.cleaning import clean_file
from scriptnorm.corpus.sentences import extract_sentences, read_sentences
from scriptnorm.corpus.vocabulary import MIN_FREQ_RANGE, Vocabulary, build_vocabulary
from scriptnorm.exceptions import ScriptNormError
from scriptnorm.inventory.inventory import (
    SUPPORTED_LANGS,
    ScriptInventory,
    load_shipped_inventory,
)
from scriptnorm.inventory.ratio import list_pairs, ratio_table, script_ratio
from scriptnorm.inventory.rules import MappingRuleSet, compile_rules, load_shipped_rules
from scriptnorm.langid.harness import (
    LabelData,
    Setup,
    SetupKind,
    confusion_group_share,
    dump_test_set,
    eval_langid,
    load_test_set,
    noisy_test_split,
    train_langid,
)
from scriptnorm.langid.model import LangIdModel
from scriptnorm.logging_config import setup_logging
from scriptnorm.metrics.evaluate import EvalReport, curve_csv, evaluate
from scriptnorm.noise.datasets import (
    ALL_LEVEL,
    MAX_SEED,
    NOISE_LEVELS,
    NoiseConfig,
    dataset_level,
    generate_parallel_datasets,
    load_dataset_pairs,
)
from scriptnorm.normalizer.channel import fit_channel
from scriptnorm.normalizer.decoder import normalize_lines, score_hypotheses
from scriptnorm.normalizer.lm import CharLM, fit_lm
from scriptnorm.runtime.manifest import sha256_file, write_manifest
from scriptnorm.runtime.tracing import traced_stage

logger = logging.getLogger(__name__)

LANG_CHOICE = click.Choice(sorted(SUPPORTED_LANGS))
LEVEL_CHOICE = click.Choice([str(level) for level in NOISE_LEVELS] + [ALL_LEVEL])

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Run config (YAML or JSON); flags override its values",
)
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads")
@click.option("--debug", is_flag=True, help="Enable debug logging")
@click.pass_context
def cli(
    ctx: click.Context, config_path: Optional[str], threads: Optional[int], debug: bool
) -> None:
    """scriptnorm - normalize Perso-Arabic text written in a dominant language's script.

    Stages run in order: clean, vocab, pairs, align, noise, then eval,
    langid-train/langid-eval and normalize/score on the produced data.
    """
    ctx.ensure_object(dict)

    settings = Settings.load()
    setup_logging(level="DEBUG" if debug else settings.log_level, format_style=settings.log_format)

    config = ConfigLoader.load_from_file(config_path) if config_path else RunConfig()
    ctx.obj["debug"] = debug
    ctx.obj["settings"] = settings
    ctx.obj["config"] = config
    ctx.obj["threads"] = threads or config.threads or settings.threads


def _config(ctx: click.Context) -> RunConfig:
    return ctx.obj["config"]


def _threads(ctx: click.Context) -> int:
    return int(ctx.obj["threads"])


def _data_dir(ctx: click.Context) -> Path:
    return ctx.obj["settings"].data_dir


def _languages(ctx: click.Context, src: Optional[str], dom: Optional[str]) -> Tuple[str, str]:
    languages = _config(ctx).languages
    src = src or (languages.src_lang if languages else None)
    dom = dom or (languages.dom_lang if languages else None)
    if not src or not dom:
        raise click.UsageError("--src and --dom are required (or set languages in the config)")
    return src, dom


def _require_seed(ctx: click.Context, seed: Optional[int]) -> int:
    value = seed if seed is not None else _config(ctx).seed
    if value is None:
        raise click.UsageError("--seed is required for this command (or set seed in the config)")
    return value


def _output_dir(ctx: click.Context, output_dir: Optional[str]) -> Path:
    path = Path(output_dir) if output_dir else _config(ctx).paths.output_dir
    path.mkdir(parents=True, exist_ok=True)
    return path


def _input_path(ctx: click.Context, value: Optional[str], key: str, flag: str) -> Path:
    configured = getattr(_config(ctx).paths, key)
    path = Path(value) if value else configured
    if path is None:
        raise click.UsageError(f"{flag} is required (or set paths.{key} in the config)")
    return Path(path)


def _source_inventory(ctx: click.Context, lang: str) -> Optional[ScriptInventory]:
    if lang not in SUPPORTED_LANGS:
        return None
    return load_shipped_inventory(lang, _data_dir(ctx))


def _rules(ctx: click.Context, src: str, dom: str, rules_path: Optional[str]) -> MappingRuleSet:
    path = rules_path or _config(ctx).paths.rules
    if path is None:
        return load_shipped_rules(src, dom, _data_dir(ctx))
    src_inv = load_shipped_inventory(src, _data_dir(ctx))
    dom_inv = load_shipped_inventory(dom, _data_dir(ctx))
    return compile_rules(path, src_inv, dom_inv)


def _rules_path(ctx: click.Context, src: str, dom: str, shipped: bool = False) -> Path:
    configured = _config(ctx).paths.rules
    if configured is not None and not shipped:
        return Path(configured)
    return _data_dir(ctx) / "rules" / f"{src}_{dom}.rules"


def _manifest(
    ctx: click.Context,
    output_dir: Path,
    command: str,
    inputs: Dict[str, Path],
    outputs: Sequence[Path],
    extra: Optional[Dict[str, Any]] = None,
) -> None:
    params = sorted(
        (k, v) for k, v in ctx.params.items() if v is not None and v != () and v is not False
    )
    entries: Dict[str, Any] = {
        "params": " ".join(f"{k}={v}" for k, v in params),
        "config_hash": config_hash(_config(ctx)),
        "threads": _threads(ctx),
    }
    for name, path in inputs.items():
        entries[f"input.{name}"] = str(path)
        entries[f"input.{name}.sha256"] = sha256_file(path)
    for path in outputs:
        entries[f"output.{path.name}.sha256"] = sha256_file(path)
    entries.update(extra or {})
    write_manifest(output_dir, command, entries, name=f"MANIFEST.{command}.tsv")


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def _parse_label_paths(values: Sequence[str], flag: str) -> List[Tuple[str, Path]]:
    parsed = []
    for value in values:
        label, sep, path = value.partition("=")
        if not sep or not label or not path:
            raise click.BadParameter(f"expected LABEL=PATH, got {value!r}", param_hint=flag)
        parsed.append((label, Path(path)))
    return parsed


@cli.command()
@click.option("--lang", type=LANG_CHOICE, default=None, help="Corpus language")
@click.option("--input", "input_path", type=click.Path(dir_okay=False), default=None)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.option("--min-tokens", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--max-tokens", type=click.IntRange(min=1), default=20, show_default=True)
@click.pass_context
def clean(
    ctx: click.Context,
    lang: Optional[str],
    input_path: Optional[str],
    output_dir: Optional[str],
    min_tokens: int,
    max_tokens: int,
) -> None:
    """Clean a raw corpus and extract sentences.

    Writes LANG.clean.txt, LANG.sentences.txt and LANG.removed.tsv.

    Examples:

        scriptnorm clean --lang ckb --input ckb_wiki.txt --output-dir out/
    """
    lang = lang or (_config(ctx).languages.src_lang if _config(ctx).languages else None)
    if lang is None:
        raise click.UsageError("--lang is required (or set languages in the config)")
    source = _input_path(ctx, input_path, "corpus", "--input")
    out = _output_dir(ctx, output_dir)
    inventory = load_shipped_inventory(lang, _data_dir(ctx))

    with traced_stage("clean", lang=lang) as stage:
        clean_path = out / f"{lang}.clean.txt"
        audit = clean_file(source, clean_path, _config(ctx).clean, inventory, _threads(ctx))
        cleaned = read_sentences(clean_path)
        sentences = extract_sentences("\n".join(cleaned), min_tokens, max_tokens)
        outputs = [
            clean_path,
            _write(out / f"{lang}.sentences.txt", "".join(f"{s}\n" for s in sentences)),
            _write(
                out / f"{lang}.removed.tsv",
                "".join(f"{cp}\t{n}\n" for cp, n in audit.to_rows()),
            ),
        ]
        stage.counts = {
            "lines_touched": audit.lines_touched,
            "clean_lines": len(cleaned),
            "sentences": len(sentences),
            "removed_chars": audit.total,
        }

    _manifest(ctx, out, "clean", {"corpus": source}, outputs, {"lang": lang, **stage.counts})
    click.echo(f"{lang}: {len(cleaned)} clean lines, {len(sentences)} sentences")


@cli.command()
@click.option("--lang", type=LANG_CHOICE, required=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--min-freq", type=click.IntRange(*MIN_FREQ_RANGE), default=3, show_default=True)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def vocab(
    ctx: click.Context, lang: str, input_path: str, min_freq: int, output_dir: Optional[str]
) -> None:
    """Build a word-frequency vocabulary (LANG.vocab.tsv)."""
    out = _output_dir(ctx, output_dir)
    with traced_stage("vocab", lang=lang) as stage:
        vocabulary = build_vocabulary(read_sentences(input_path), min_freq)
        path = out / f"{lang}.vocab.tsv"
        vocabulary.save(path)
        stage.counts = {"words": len(vocabulary)}

    _manifest(ctx, out, "vocab", {"corpus": Path(input_path)}, [path], {"lang": lang})
    click.echo(f"{lang}: {len(vocabulary)} words with count >= {min_freq}")


@cli.command()
@click.option("--src", type=LANG_CHOICE, default=None)
@click.option("--dom", type=LANG_CHOICE, default=None)
@click.option("--vocab", "vocab_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--lexicon", type=click.Path(dir_okay=False), default=None)
@click.option("--dictionary", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--rules", "rules_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--variant-cap", type=click.IntRange(min=1), default=None)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def pairs(
    ctx: click.Context,
    src: Optional[str],
    dom: Optional[str],
    vocab_path: str,
    lexicon: Optional[str],
    dictionary: Optional[str],
    rules_path: Optional[str],
    variant_cap: Optional[int],
    output_dir: Optional[str],
) -> None:
    """Extract spelling pairs (SRC_DOM.pairs.tsv) from a vocabulary and a lexicon."""
    src, dom = _languages(ctx, src, dom)
    lexicon_path = _input_path(ctx, lexicon, "lexicon", "--lexicon")
    out = _output_dir(ctx, output_dir)
    cap = variant_cap or _config(ctx).alignment.variant_cap
    rules = _rules(ctx, src, dom, rules_path)

    with traced_stage("pairs", src_lang=src, dom_lang=dom) as stage:
        found: List[SpellingPair] = extract_spelling_pairs(
            Vocabulary.load(vocab_path), load_lexicon(lexicon_path), rules, cap
        )
        if dictionary:
            seen = {(p.src_word, p.dom_word) for p in found}
            for pair in load_bilingual_dictionary(dictionary):
                if (pair.src_word, pair.dom_word) not in seen:
                    seen.add((pair.src_word, pair.dom_word))
                    found.append(pair)
        path = out / f"{src}_{dom}.pairs.tsv"
        save_pairs(found, path)
        stage.counts = {
            "pairs": len(found),
            "dictionary_pairs": sum(1 for p in found if p.provenance == Provenance.DICTIONARY),
        }

    inputs = {"vocab": Path(vocab_path), "lexicon": lexicon_path}
    if dictionary:
        inputs["dictionary"] = Path(dictionary)
    extra = {"src_lang": src, "dom_lang": dom, "variant_cap": cap, **stage.counts}
    _manifest(ctx, out, "pairs", inputs, [path], extra)
    click.echo(f"{src}->{dom}: {len(found)} spelling pairs")


@cli.command()
@click.option("--src", type=LANG_CHOICE, default=None)
@click.option("--dom", type=LANG_CHOICE, default=None)
@click.option("--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--rules", "rules_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--prune-threshold", type=click.FloatRange(0.1, 1.0), default=None)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def align(
    ctx: click.Context,
    src: Optional[str],
    dom: Optional[str],
    pairs_path: Optional[str],
    rules_path: Optional[str],
    prune_threshold: Optional[float],
    output_dir: Optional[str],
) -> None:
    """Build the character-alignment matrix (SRC_DOM.matrix.tsv)."""
    src, dom = _languages(ctx, src, dom)
    out = _output_dir(ctx, output_dir)
    section = _config(ctx).alignment
    threshold = prune_threshold if prune_threshold is not None else section.prune_threshold
    rules = _rules(ctx, src, dom, rules_path)

    with traced_stage("align", src_lang=src, dom_lang=dom) as stage:
        spelling_pairs = load_pairs(pairs_path) if pairs_path else []
        matrix = build_alignment_matrix(
            spelling_pairs, rules, section.scoring, threshold, _threads(ctx)
        )
        matrix_path = out / f"{src}_{dom}.matrix.tsv"
        matrix.save(matrix_path)
        identity_path = _write(out / f"{src}_{dom}.identity.tsv", matrix.identity_tsv())
        stage.counts = {"pairs": len(spelling_pairs), "alternatives": len(matrix)}

    inputs = {"pairs": Path(pairs_path)} if pairs_path else {}
    _manifest(
        ctx,
        out,
        "align",
        inputs,
        [matrix_path, identity_path],
        {
            "src_lang": src,
            "dom_lang": dom,
            "prune_threshold": threshold,
            "matrix_sha256": matrix.checksum(),
            **stage.counts,
        },
    )
    click.echo(f"{src}->{dom}: {len(matrix.entries)} sources, {len(matrix)} alternatives")


@cli.command()
@click.option(
    "--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False), required=True
)
@click.option("--corpus", type=click.Path(dir_okay=False), default=None)
@click.option("--level", type=LEVEL_CHOICE, default=None, help="Noise level [default: all]")
@click.option("--seed", type=click.IntRange(0, MAX_SEED), default=None)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def noise(
    ctx: click.Context,
    matrix_path: str,
    corpus: Optional[str],
    level: Optional[str],
    seed: Optional[int],
    output_dir: Optional[str],
) -> None:
    """Generate noisy/clean parallel datasets (SRC_DOM.LEVEL.tsv).

    Examples:

        scriptnorm noise --matrix out/ckb_fas.matrix.tsv --corpus out/ckb.sentences.txt \\
            --level 100 --seed 7
    """
    seed_value = _require_seed(ctx, seed)
    corpus_path = _input_path(ctx, corpus, "corpus", "--corpus")
    out = _output_dir(ctx, output_dir)
    section = _config(ctx).noise
    chosen: Any = section.level if level is None else level
    cfg = NoiseConfig(
        level=chosen if chosen == ALL_LEVEL else int(chosen),
        seed=seed_value,
        dedup=section.dedup,
    )
    matrix = CharAlignmentMatrix.load(matrix_path)
    inventory = _source_inventory(ctx, matrix.src_lang)

    with traced_stage("noise", src_lang=matrix.src_lang, dom_lang=matrix.dom_lang) as stage:
        datasets = generate_parallel_datasets(
            read_sentences(corpus_path), matrix, cfg, _threads(ctx), inventory
        )
        outputs = [dataset.save(out) for dataset in datasets]
        stats: Dict[str, Any] = {}
        for dataset in datasets:
            for key, value in dataset.stats().items():
                stats[f"level.{dataset.level}.{key}"] = value
        stage.counts = {f"pairs.{d.level}": len(d) for d in datasets}

    _manifest(
        ctx,
        out,
        "noise",
        {"matrix": Path(matrix_path), "corpus": corpus_path},
        outputs,
        {"seed": seed_value, "level": cfg.level, "dedup": cfg.dedup, **stats},
    )
    for dataset, path in zip(datasets, outputs):
        click.echo(f"{path.name}\t{len(dataset)}")


@cli.command("eval")
@click.option("--hyp", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--ref", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option(
    "--dataset",
    "datasets",
    type=click.Path(exists=True, dir_okay=False),
    multiple=True,
    help="Parallel dataset(s); with --baseline, each is scored as a copy baseline",
)
@click.option("--baseline", is_flag=True, help="Score the noisy column against the clean one")
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def eval_command(
    ctx: click.Context,
    hyp: Optional[str],
    ref: Optional[str],
    datasets: Tuple[str, ...],
    baseline: bool,
    output_dir: Optional[str],
) -> None:
    """Compute BLEU, chrF and sequence accuracy.

    Prints one TSV report line per scored set and writes curve.csv.

    Examples:

        scriptnorm eval --baseline --dataset out/ckb_fas.20.tsv --dataset out/ckb_fas.100.tsv

        scriptnorm eval --hyp system.txt --ref out/ckb_fas.100.tsv
    """
    reports: List[EvalReport] = []
    inputs: Dict[str, Path] = {}
    with traced_stage("eval", baseline=baseline) as stage:
        if baseline:
            targets = list(datasets) + ([ref] if ref else [])
            if not targets:
                raise click.UsageError("--baseline needs at least one --dataset")
            for i, path in enumerate(targets):
                reports.append(evaluate(None, path, True, _config(ctx).metrics))
                inputs[f"dataset{i}"] = Path(path)
        else:
            reference = ref or (datasets[0] if len(datasets) == 1 else None)
            if hyp is None or reference is None:
                raise click.UsageError("--hyp and one of --ref/--dataset are required")
            reports.append(evaluate(hyp, reference, False, _config(ctx).metrics))
            inputs = {"hyp": Path(hyp), "ref": Path(reference)}
        stage.counts = {"reports": len(reports)}

    out = _output_dir(ctx, output_dir)
    curve_path = _write(out / "curve.csv", curve_csv(reports))
    _manifest(ctx, out, "eval", inputs, [curve_path], {"baseline": baseline})
    for report in reports:
        click.echo(report.to_tsv_line())


@cli.command("langid-train")
@click.option("--clean", "clean_specs", multiple=True, required=True, help="LABEL=PATH sentences")
@click.option("--noisy", "noisy_specs", multiple=True, help="LABEL=PATH parallel dataset")
@click.option(
    "--setup",
    "setup_name",
    default="clean",
    show_default=True,
    help="clean, noisy[:LEVEL] or merged",
)
@click.option("--seed", type=click.IntRange(0, MAX_SEED), default=None)
@click.option("--cap", type=click.IntRange(min=1), default=None)
@click.option("--epochs", type=click.IntRange(min=1), default=None)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def langid_train(
    ctx: click.Context,
    clean_specs: Tuple[str, ...],
    noisy_specs: Tuple[str, ...],
    setup_name: str,
    seed: Optional[int],
    cap: Optional[int],
    epochs: Optional[int],
    output_dir: Optional[str],
) -> None:
    """Train a language identifier (langid.bin) and freeze its test split (langid.test.tsv).

    With --setup merged, langid.test.noisy.tsv also holds the noisy part of the split.
    """
    seed_value = _require_seed(ctx, seed)
    setup = Setup.parse(setup_name)
    params = _config(ctx).langid.model_copy(
        update={k: v for k, v in {"cap": cap, "epochs": epochs}.items() if v is not None}
    )
    out = _output_dir(ctx, output_dir)

    data: Dict[str, LabelData] = {}
    inputs: Dict[str, Path] = {}
    for label, path in _parse_label_paths(clean_specs, "--clean"):
        data.setdefault(label, LabelData()).clean.extend(read_sentences(path))
        inputs[f"clean.{label}"] = path
    for label, path in _parse_label_paths(noisy_specs, "--noisy"):
        level = dataset_level(path) or ALL_LEVEL
        noisy_column = [noisy for noisy, _ in load_dataset_pairs(path)]
        data.setdefault(label, LabelData()).noisy.setdefault(level, []).extend(noisy_column)
        inputs[f"noisy.{label}.{level}"] = path

    with traced_stage("langid-train", setup=str(setup)) as stage:
        model, test = train_langid(data, setup, params, seed_value)
        model_path = out / "langid.bin"
        model.save(model_path)
        test_path = _write(out / "langid.test.tsv", dump_test_set(test))
        outputs = [model_path, test_path]
        stage.counts = {"labels": len(model.labels), "test": len(test)}
        if setup.kind == SetupKind.MERGED:
            noisy_test = noisy_test_split(test, data)
            outputs.append(_write(out / "langid.test.noisy.tsv", dump_test_set(noisy_test)))
            stage.counts["test_noisy"] = len(noisy_test)

    _manifest(
        ctx,
        out,
        "langid-train",
        inputs,
        outputs,
        {
            "seed": seed_value,
            "setup": str(setup),
            "cap": params.cap,
            "epochs": params.epochs,
            "buckets": params.buckets,
            **stage.counts,
        },
    )
    click.echo(f"Trained on {len(model.labels)} labels; {len(test)} held-out sentences")


@cli.command("langid-eval")
@click.option("--model", "model_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--test", "test_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def langid_eval(
    ctx: click.Context, model_path: str, test_path: str, output_dir: Optional[str]
) -> None:
    """Evaluate a language identifier (langid.eval.csv, langid.confusion.csv)."""
    out = _output_dir(ctx, output_dir)
    with traced_stage("langid-eval") as stage:
        model = LangIdModel.load(model_path)
        test = load_test_set("\n".join(read_sentences(test_path)))
        result = eval_langid(model, test, _threads(ctx))
        outputs = [
            _write(out / "langid.eval.csv", result.to_csv()),
            _write(out / "langid.confusion.csv", result.confusion_csv()),
        ]
        share = confusion_group_share(result)
        stage.counts = {"test": len(test)}

    _manifest(
        ctx,
        out,
        "langid-eval",
        {"model": Path(model_path), "test": Path(test_path)},
        outputs,
        {"macro_f1": result.macro[1].f1, "group_share": share, **stage.counts},
    )
    click.echo(f"macro F@1\t{result.macro[1].f1:.4f}")
    if 2 in result.macro:
        click.echo(f"macro R@2\t{result.macro[2].recall:.4f}")
    click.echo(f"in-group confusions\t{share:.4f}")


@cli.command()
@click.option(
    "--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False), required=True
)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option(
    "--lm-corpus",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Clean sentences to fit the character LM on",
)
@click.option(
    "--lm",
    "lm_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Previously saved LM table",
)
@click.option("--beam-width", type=click.IntRange(min=1), default=None)
@click.option("--self-weight", type=click.FloatRange(min=0, min_open=True), default=None)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def normalize(
    ctx: click.Context,
    matrix_path: str,
    input_path: str,
    lm_corpus: Optional[str],
    lm_path: Optional[str],
    beam_width: Optional[int],
    self_weight: Optional[float],
    output_dir: Optional[str],
) -> None:
    """Normalize noisy sentences with the noisy-channel decoder (normalized.txt)."""
    if (lm_corpus is None) == (lm_path is None):
        raise click.UsageError("exactly one of --lm-corpus and --lm is required")
    section = _config(ctx).normalizer
    width = beam_width or section.beam_width
    weight = self_weight or section.self_weight
    out = _output_dir(ctx, output_dir)
    matrix = CharAlignmentMatrix.load(matrix_path)
    inventory = (
        load_shipped_inventory(matrix.src_lang, _data_dir(ctx))
        if matrix.src_lang in SUPPORTED_LANGS
        else None
    )

    with traced_stage("normalize", src_lang=matrix.src_lang, dom_lang=matrix.dom_lang) as stage:
        channel = fit_channel(matrix, weight, inventory)
        if lm_path is not None:
            lm = CharLM.load(lm_path)
            lm_input = Path(lm_path)
        else:
            assert lm_corpus is not None
            lm_input = Path(lm_corpus)
            lm = fit_lm(
                read_sentences(lm_input),
                section.lm_order,
                section.alpha,
                inventory,
                matrix.checksum(),
            )
        lines = read_sentences(input_path)
        normalized = normalize_lines(lines, channel, lm, width, _threads(ctx))
        channel.save(out / "channel.tsv")
        lm.save(out / "lm.tsv")
        outputs = [
            out / "channel.tsv",
            out / "lm.tsv",
            _write(out / "normalized.txt", "".join(f"{line}\n" for line in normalized)),
        ]
        stage.counts = {"sentences": len(normalized)}

    inputs = {"matrix": Path(matrix_path), "input": Path(input_path), "lm": lm_input}
    _manifest(
        ctx,
        out,
        "normalize",
        inputs,
        outputs,
        {
            "beam_width": width,
            "self_weight": weight,
            "lm_order": lm.order,
            "alpha": lm.alpha,
            **stage.counts,
        },
    )
    click.echo(f"Normalized {len(normalized)} sentences -> {out / 'normalized.txt'}")


@cli.command()
@click.option("--hyp", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--ref", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def score(ctx: click.Context, hyp: str, ref: str, output_dir: Optional[str]) -> None:
    """Score externally produced hypotheses against references."""
    with traced_stage("score"):
        report = score_hypotheses(hyp, ref)
    out = _output_dir(ctx, output_dir)
    report_path = _write(out / "score.tsv", report.to_tsv_line() + "\n")
    _manifest(ctx, out, "score", {"hyp": Path(hyp), "ref": Path(ref)}, [report_path])
    click.echo(report.to_tsv_line())


@cli.command()
@click.option("--src", type=LANG_CHOICE, default=None)
@click.option("--dom", type=LANG_CHOICE, default=None)
@click.option("--all", "all_pairs", is_flag=True, help="Every bundled pair, highest ratio first")
@click.option("--output-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def ratio(
    ctx: click.Context,
    src: Optional[str],
    dom: Optional[str],
    all_pairs: bool,
    output_dir: Optional[str],
) -> None:
    """Print script ratios and write them to ratio.tsv.

    Without --dom, the source language is paired with each of its
    dominant languages.

    Examples:

        scriptnorm ratio --src ckb --dom arb

        scriptnorm ratio --src hac

        scriptnorm ratio --all
    """
    data_dir = _data_dir(ctx)
    rows: List[Tuple[str, str, float]]
    if all_pairs:
        rows = ratio_table(data_dir)
    else:
        languages = _config(ctx).languages
        src = src or (languages.src_lang if languages else None)
        dom = dom or (languages.dom_lang if languages else None)
        if src is None:
            raise click.UsageError("--src is required (or set languages in the config)")
        wanted = [(src, dom)] if dom is not None else list_pairs(src)
        if not wanted:
            raise click.UsageError(f"{src} has no dominant language; pass --dom")
        rows = []
        for row_src, row_dom in wanted:
            rules = _rules(ctx, row_src, row_dom, None)
            assert rules.src_inventory is not None and rules.dom_inventory is not None
            value = script_ratio(rules, rules.src_inventory, rules.dom_inventory)
            rows.append((row_src, row_dom, value))

    lines = [f"{row_src}\t{row_dom}\t{value:.4f}" for row_src, row_dom, value in rows]
    out = _output_dir(ctx, output_dir)
    ratio_path = _write(out / "ratio.tsv", "".join(f"{line}\n" for line in lines))
    inputs: Dict[str, Path] = {}
    for row_src, row_dom, _ in rows:
        inputs[f"rules.{row_src}_{row_dom}"] = _rules_path(ctx, row_src, row_dom, all_pairs)
        for lang in (row_src, row_dom):
            inputs[f"inventory.{lang}"] = data_dir / "inventories" / f"{lang}.inv"
    _manifest(ctx, out, "ratio", inputs, [ratio_path], {"pairs": len(rows)})
    for line in lines:
        click.echo(line)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and map failures to exit codes.

    Returns:
        0 on success, 1 on usage errors, 2 on data errors
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name="scriptnorm", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.secho("Aborted", fg="red", err=True)
        return EXIT_USAGE
    except (ScriptNormError, click.ClickException, OSError) as e:
        click.secho(f"Error: {e}", fg="red", err=True)
        return EXIT_DATA
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
