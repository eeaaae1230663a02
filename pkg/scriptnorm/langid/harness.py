"""Experiment setups for language identification and their evaluation.

Three setups are supported:

- ``clean``: every label trains on clean sentences.
- ``noisy:<level>``: labels with synthetic noisy data train on that level's
  noisy sentences; the dominant languages, which have none, stay clean.
- ``merged``: clean and merged-noise sentences together, with the per-label
  cap doubled. Labels without noisy data are topped up with extra clean
  sentences so every label aims at the same count. Its held-out split mixes
  clean and noisy sentences; :func:`noisy_test_split` keeps the noisy part.
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from scriptnorm.exceptions import LangIdError
from scriptnorm.langid.model import LangIdModel, LangIdParams, predict_topk, train_model
from scriptnorm.logging_config import StructuredLogger
from scriptnorm.noise.datasets import ALL_LEVEL, NOISE_LEVELS
from scriptnorm.runtime.parallel import ordered_map

logger = logging.getLogger(__name__)
structured = StructuredLogger(__name__)

MIN_SENTENCES_PER_LABEL = 10
TOP_K = (1, 2)
CONFUSABLE_GROUPS: Tuple[frozenset, ...] = (
    frozenset({"azb", "glk", "mzn"}),
    frozenset({"ckb", "kmr", "hac"}),
)

NoiseLevel = Union[int, str]
TestSet = List[Tuple[str, str]]


class SetupKind(str, Enum):
    CLEAN = "clean"
    NOISY = "noisy"
    MERGED = "merged"


@dataclass(frozen=True)
class Setup:
    """A training setup; ``level`` only applies to ``noisy``."""

    kind: SetupKind
    level: NoiseLevel = ALL_LEVEL

    @classmethod
    def parse(cls, text: str) -> "Setup":
        """Parse ``clean``, ``merged``, ``noisy`` or ``noisy:<level>``."""
        name, _, level = text.strip().lower().partition(":")
        try:
            kind = SetupKind(name)
        except ValueError:
            raise LangIdError(f"Unknown setup {text!r}; expected clean, noisy[:level] or merged")
        if kind != SetupKind.NOISY:
            if level:
                raise LangIdError(f"Setup {kind.value} takes no level")
            return cls(kind)
        if not level or level == ALL_LEVEL:
            return cls(kind, ALL_LEVEL)
        if not level.isdigit() or int(level) not in NOISE_LEVELS:
            raise LangIdError(f"Noise level must be one of {NOISE_LEVELS} or 'all', got {level!r}")
        return cls(kind, int(level))

    def __str__(self) -> str:
        return f"noisy:{self.level}" if self.kind == SetupKind.NOISY else self.kind.value


@dataclass
class LabelData:
    """Sentences available for one label.

    Attributes:
        clean: Clean sentences
        noisy: Noise level (or ``all``) -> noisy sentences
    """
    clean: List[str] = field(default_factory=list)
    noisy: Dict[NoiseLevel, List[str]] = field(default_factory=dict)


@dataclass(frozen=True)
class TopKScores:
    precision: float
    recall: float
    f1: float


@dataclass
class LangIdEval:
    """Per-label and macro P@k, R@k, F@k plus the top-1 confusion matrix.

    ``confusion[i, j]`` counts test sentences of ``labels[i]`` predicted as
    ``labels[j]``.
    """
    labels: List[str]
    support: Dict[str, int]
    per_label: Dict[str, Dict[int, TopKScores]]
    macro: Dict[int, TopKScores]
    confusion: np.ndarray

    def misclassifications(self) -> List[Tuple[str, str, int]]:
        """(gold, predicted, count) for every non-zero off-diagonal cell."""
        cells = []
        for i, gold in enumerate(self.labels):
            for j, predicted in enumerate(self.labels):
                if i != j and self.confusion[i, j]:
                    cells.append((gold, predicted, int(self.confusion[i, j])))
        return cells

    def to_csv(self) -> str:
        """One row per label plus a ``macro`` row."""
        fields = ["label", "support"]
        for k in sorted(self.macro):
            fields.extend([f"p@{k}", f"r@{k}", f"f@{k}"])
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(fields)
        rows = [(label, self.support[label], self.per_label[label]) for label in self.labels]
        rows.append(("macro", sum(self.support.values()), self.macro))
        for label, support, scores in rows:
            row: List[object] = [label, support]
            for k in sorted(self.macro):
                s = scores[k]
                row.extend([f"{s.precision:.4f}", f"{s.recall:.4f}", f"{s.f1:.4f}"])
            writer.writerow(row)
        return buffer.getvalue()

    def confusion_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["gold/predicted", *self.labels])
        for label, row in zip(self.labels, self.confusion):
            writer.writerow([label, *(int(v) for v in row)])
        return buffer.getvalue()


def _select_pool(label: str, data: LabelData, setup: Setup) -> Tuple[List[str], List[str]]:
    """(primary pool, clean top-up pool) for one label under ``setup``."""
    if setup.kind == SetupKind.CLEAN:
        return list(data.clean), []
    if setup.kind == SetupKind.NOISY:
        noisy = data.noisy.get(setup.level)
        if noisy:
            return list(noisy), []
        logger.info(f"Label {label} has no noisy data at level {setup.level}; using clean")
        return list(data.clean), []
    merged_noise = data.noisy.get(ALL_LEVEL, [])
    if merged_noise:
        return list(data.clean) + list(merged_noise), []
    return [], list(data.clean)


def sample_label(
    label: str,
    data: LabelData,
    setup: Setup,
    cap: int,
    rng: np.random.Generator,
) -> List[str]:
    """Uniformly down-sample one label's sentences to the setup's cap.

    Shortfalls are logged, not raised.
    """
    target = cap * 2 if setup.kind == SetupKind.MERGED else cap
    primary, top_up = _select_pool(label, data, setup)
    pool = primary or top_up
    if top_up:
        logger.info(f"Rebalancing {label} with clean sentences toward {target}")
    if len(pool) < target:
        structured.log_shortfall(label, target, len(pool))
        return [pool[i] for i in rng.permutation(len(pool))]
    return [pool[i] for i in rng.permutation(len(pool))[:target]]


def train_langid(
    datasets: Mapping[str, LabelData],
    setup: Setup,
    params: Optional[LangIdParams] = None,
    seed: int = 0,
) -> Tuple[LangIdModel, TestSet]:
    """Sample, split and train one language identifier.

    Per label, sentences are down-sampled to ``cap`` (doubled for ``merged``)
    and split ``split`` / ``1 - split`` into train and test.

    Args:
        datasets: Label -> available sentences
        setup: Training setup
        params: Sampling and training parameters
        seed: Seed for sampling, splitting, initialization and shuffling

    Returns:
        (trained model, held-out (sentence, label) test set)

    Raises:
        LangIdError: With fewer than two labels or fewer than 10 sentences for a label
    """
    params = params or LangIdParams()
    labels = sorted(datasets)
    if len(labels) < 2:
        raise LangIdError(f"Language identification needs at least two labels, got {labels}")

    train: TestSet = []
    test: TestSet = []
    for index, label in enumerate(labels):
        rng = np.random.default_rng([seed, 0, index])
        sentences = sample_label(label, datasets[label], setup, params.cap, rng)
        if len(sentences) < MIN_SENTENCES_PER_LABEL:
            raise LangIdError(
                f"Label {label} has {len(sentences)} sentences under setup {setup}; "
                f"at least {MIN_SENTENCES_PER_LABEL} are required"
            )
        cut = int(len(sentences) * params.split)
        train.extend((s, label) for s in sentences[:cut])
        test.extend((s, label) for s in sentences[cut:])
        logger.info(f"{label}: {cut} train / {len(sentences) - cut} test sentences")

    model = train_model(train, labels, params, seed)
    return model, test


def noisy_test_split(test: Sequence[Tuple[str, str]], datasets: Mapping[str, LabelData]) -> TestSet:
    """The noisy part of a held-out split.

    A ``merged`` test split mixes clean and noisy sentences. This keeps the
    sentences found in their label's merged-noise pool; labels without noisy
    data keep all of theirs.
    """
    pools = {label: set(data.noisy.get(ALL_LEVEL, [])) for label, data in datasets.items()}
    return [
        (sentence, label)
        for sentence, label in test
        if not pools.get(label) or sentence in pools[label]
    ]


def predict_batch(
    model: LangIdModel, sentences: Sequence[str], k: int = 1, threads: int = 1
) -> List[List[Tuple[str, float]]]:
    """Top-k predictions for many sentences, in input order."""
    return ordered_map(lambda s: predict_topk(model, s, k), sentences, threads)


def _scores(hits: int, n: int, k: int) -> TopKScores:
    if n == 0:
        return TopKScores(0.0, 0.0, 0.0)
    precision = hits / (k * n)
    recall = hits / n
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return TopKScores(precision, recall, f1)


def eval_langid(
    model: LangIdModel, test: Sequence[Tuple[str, str]], threads: int = 1
) -> LangIdEval:
    """P@k = hits@k / (k N), R@k = hits@k / N and their harmonic mean, for k = 1, 2.

    Macro scores average the labels that occur in the test set.

    Raises:
        LangIdError: On an empty test set or a gold label the model does not know
    """
    if not test:
        raise LangIdError("Cannot evaluate on an empty test set")
    for _, gold in test:
        model.label_index(gold)

    ks = [k for k in TOP_K if k <= len(model.labels)]
    predictions = predict_batch(model, [s for s, _ in test], max(ks), threads)

    labels = list(model.labels)
    support = {label: 0 for label in labels}
    hits = {label: {k: 0 for k in ks} for label in labels}
    confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for (_, gold), ranked in zip(test, predictions):
        support[gold] += 1
        predicted = [label for label, _ in ranked]
        for k in ks:
            if gold in predicted[:k]:
                hits[gold][k] += 1
        confusion[model.label_index(gold), model.label_index(predicted[0])] += 1

    per_label = {
        label: {k: _scores(hits[label][k], support[label], k) for k in ks} for label in labels
    }
    present = [label for label in labels if support[label]]
    macro = {
        k: TopKScores(
            *(
                float(np.mean([getattr(per_label[label][k], name) for label in present]))
                for name in ("precision", "recall", "f1")
            )
        )
        for k in ks
    }
    result = LangIdEval(labels, support, per_label, macro, confusion)
    logger.info(
        f"Language-id eval on {len(test)} sentences: macro F@1={macro[1].f1:.4f}"
        + (f", R@2={macro[2].recall:.4f}" if 2 in macro else "")
    )
    return result


def confusion_group_share(
    evaluation: LangIdEval, groups: Iterable[Iterable[str]] = CONFUSABLE_GROUPS
) -> float:
    """Share of misclassifications from a group's labels that stay inside that group.

    Returns 1.0 when no gold label of any group was misclassified.
    """
    group_of: Dict[str, frozenset] = {}
    for group in groups:
        members = frozenset(group)
        for label in members:
            group_of[label] = members
    inside = total = 0
    for gold, predicted, count in evaluation.misclassifications():
        if gold not in group_of:
            continue
        total += count
        if predicted in group_of[gold]:
            inside += count
    return inside / total if total else 1.0


def load_test_set(text: str) -> TestSet:
    """Parse ``label<TAB>sentence`` lines."""
    pairs: TestSet = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        if not line:
            continue
        label, sep, sentence = line.partition("\t")
        if not sep:
            raise LangIdError(f"line {line_no}: expected 'label<TAB>sentence'")
        pairs.append((sentence, label))
    return pairs


def dump_test_set(test: Sequence[Tuple[str, str]]) -> str:
    return "".join(f"{label}\t{sentence}\n" for sentence, label in test)
