"""Evaluation metrics and the copy baseline."""

from scriptnorm.metrics.evaluate import EvalReport, curve_csv, evaluate, read_lines, score_pairs
from scriptnorm.metrics.scores import MetricOptions, chrf_score, corpus_bleu, sequence_accuracy

__all__ = [
    "EvalReport",
    "curve_csv",
    "evaluate",
    "read_lines",
    "score_pairs",
    "MetricOptions",
    "chrf_score",
    "corpus_bleu",
    "sequence_accuracy",
]
