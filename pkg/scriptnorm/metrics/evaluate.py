"""Evaluation reports over hypothesis/reference files and the copy baseline."""

import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from scriptnorm.corpus.sentences import read_sentences
from scriptnorm.exceptions import CorpusError, MetricsError, NoiseError
from scriptnorm.metrics.scores import MetricOptions, chrf_score, corpus_bleu, sequence_accuracy
from scriptnorm.noise.datasets import dataset_level, load_dataset_pairs

logger = logging.getLogger(__name__)

TSV_HEADER = "label\tbleu\tchrf\tseq_acc\tn_pairs"
CURVE_FIELDS = ["label", "level", "bleu", "chrf", "seq_acc", "n_pairs"]


@dataclass
class EvalReport:
    """BLEU, chrF and sequence accuracy for one hypothesis/reference set.

    Attributes:
        bleu: Corpus BLEU, 0-100
        chrf: Corpus chrF, 0-100
        seq_acc: Sequence accuracy, 0-1
        n_pairs: Number of scored pairs
        label: Free-form name (dataset file, model run)
        level: Noise level of the scored dataset, when known
    """
    bleu: float
    chrf: float
    seq_acc: float
    n_pairs: int
    label: str = ""
    level: Optional[Union[int, str]] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.bleu <= 100.0 or not 0.0 <= self.chrf <= 100.0:
            raise MetricsError(f"Scores out of range: bleu={self.bleu}, chrf={self.chrf}")
        if not 0.0 <= self.seq_acc <= 1.0:
            raise MetricsError(f"Sequence accuracy out of range: {self.seq_acc}")
        if self.n_pairs <= 0:
            raise MetricsError("An evaluation report needs at least one pair")

    def to_tsv_line(self) -> str:
        return (
            f"{self.label}\t{self.bleu:.2f}\t{self.chrf:.2f}\t{self.seq_acc:.4f}\t{self.n_pairs}"
        )


def score_pairs(
    hyps: Sequence[str],
    refs: Sequence[str],
    label: str = "",
    level: Optional[Union[int, str]] = None,
    options: Optional[MetricOptions] = None,
) -> EvalReport:
    """All three metrics for aligned hypothesis and reference lists."""
    return EvalReport(
        bleu=corpus_bleu(hyps, refs, options),
        chrf=chrf_score(hyps, refs, options),
        seq_acc=sequence_accuracy(hyps, refs),
        n_pairs=len(hyps),
        label=label,
        level=level,
    )


def read_lines(path: str | Path) -> List[str]:
    """Hypothesis or reference lines of a plain-text file."""
    try:
        return read_sentences(path)
    except CorpusError as e:
        raise MetricsError(str(e))


def _is_dataset(path: str | Path) -> bool:
    return Path(path).suffix == ".tsv"


def _dataset_pairs(path: str | Path) -> List[tuple]:
    try:
        return load_dataset_pairs(path)
    except NoiseError as e:
        raise MetricsError(str(e))


def evaluate(
    hyp_file: Optional[str | Path],
    ref_file: str | Path,
    baseline_mode: bool = False,
    options: Optional[MetricOptions] = None,
) -> EvalReport:
    """Score a hypothesis file, or the copy baseline of a parallel dataset.

    In baseline mode ``ref_file`` is a ``noisy<TAB>clean`` dataset and the noisy
    column is scored against the clean one. Otherwise hypotheses come from
    ``hyp_file``; a ``.tsv`` reference contributes its clean column.

    Raises:
        MetricsError: On I/O failures or mismatched line counts
    """
    level = dataset_level(ref_file) if _is_dataset(ref_file) else None
    if baseline_mode:
        pairs = _dataset_pairs(ref_file)
        hyps = [noisy for noisy, _ in pairs]
        refs = [clean for _, clean in pairs]
    else:
        if hyp_file is None:
            raise MetricsError("A hypothesis file is required outside baseline mode")
        hyps = read_lines(hyp_file)
        if _is_dataset(ref_file):
            refs = [clean for _, clean in _dataset_pairs(ref_file)]
        else:
            refs = read_lines(ref_file)

    if len(hyps) != len(refs):
        raise MetricsError(
            f"Line count mismatch: {len(hyps)} hypotheses vs {len(refs)} references"
        )
    report = score_pairs(hyps, refs, Path(ref_file).name, level, options)
    logger.info(
        f"{'Baseline' if baseline_mode else 'Evaluation'} {report.label}: "
        f"BLEU={report.bleu:.2f} chrF={report.chrf:.2f} seq_acc={report.seq_acc:.4f}"
    )
    return report


def curve_csv(reports: Iterable[EvalReport]) -> str:
    """Level-vs-metric rows for plotting, as CSV text."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CURVE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(
            {
                "label": report.label,
                "level": "" if report.level is None else report.level,
                "bleu": f"{report.bleu:.4f}",
                "chrf": f"{report.chrf:.4f}",
                "seq_acc": f"{report.seq_acc:.6f}",
                "n_pairs": report.n_pairs,
            }
        )
    return buffer.getvalue()
