"""Corpus-level BLEU, chrF and sequence accuracy.

BLEU and chrF are computed with sacrebleu. Inputs are tokenized with the
corpus tokenizer and re-joined with single spaces, so sacrebleu's own
tokenization is switched off.
"""

import logging
from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from sacrebleu.metrics import BLEU, CHRF

from scriptnorm.corpus.tokenizer import tokenize
from scriptnorm.exceptions import MetricsError

logger = logging.getLogger(__name__)

CHRF_CHAR_ORDER = 6
CHRF_BETA = 2


class MetricOptions(BaseModel):
    """BLEU smoothing and chrF settings; the defaults are the reported configuration."""

    bleu_smoothing: Literal["exp", "floor", "add-k", "none"] = "exp"
    chrf_char_order: int = Field(default=CHRF_CHAR_ORDER, ge=1)
    chrf_beta: int = Field(default=CHRF_BETA, ge=1)


def _check(hyps: Sequence[str], refs: Sequence[str]) -> None:
    if len(hyps) != len(refs):
        raise MetricsError(
            f"Hypothesis/reference count mismatch: {len(hyps)} vs {len(refs)}"
        )
    if not hyps:
        raise MetricsError("Cannot score an empty hypothesis set")


def _clamp(score: float, upper: float = 100.0) -> float:
    return max(0.0, min(upper, score))


def _pretokenize(lines: Sequence[str]) -> List[str]:
    return [" ".join(tokenize(line)) for line in lines]


def corpus_bleu(
    hyps: Sequence[str], refs: Sequence[str], options: Optional[MetricOptions] = None
) -> float:
    """Corpus BLEU (n = 1..4, brevity penalty, exponential smoothing by default), 0-100.

    Raises:
        MetricsError: On empty or mismatched inputs
    """
    _check(hyps, refs)
    options = options or MetricOptions()
    metric = BLEU(tokenize="none", smooth_method=options.bleu_smoothing)
    result = metric.corpus_score(_pretokenize(hyps), [_pretokenize(refs)])
    return _clamp(float(result.score))


def chrf_score(
    hyps: Sequence[str], refs: Sequence[str], options: Optional[MetricOptions] = None
) -> float:
    """Corpus chrF (character n-grams 1..6 and beta 2 by default, no whitespace), 0-100.

    Raises:
        MetricsError: On empty or mismatched inputs
    """
    _check(hyps, refs)
    options = options or MetricOptions()
    metric = CHRF(
        char_order=options.chrf_char_order,
        word_order=0,
        beta=options.chrf_beta,
        whitespace=False,
        eps_smoothing=False,
    )
    result = metric.corpus_score(list(hyps), [list(refs)])
    return _clamp(float(result.score))


def sequence_counts(hyp: str, ref: str) -> Tuple[int, int]:
    """(positional token matches, reference token count) for one pair."""
    hyp_tokens = tokenize(hyp)
    ref_tokens = tokenize(ref)
    matches = sum(1 for h, r in zip(hyp_tokens, ref_tokens) if h == r)
    return matches, len(ref_tokens)


def sequence_accuracy(hyps: Sequence[str], refs: Sequence[str]) -> float:
    """Share of reference token positions the hypothesis reproduces exactly.

    Hypothesis tokens past the reference length are ignored; reference
    positions past the hypothesis length count as wrong.

    Raises:
        MetricsError: On empty or mismatched inputs, or if no reference has tokens
    """
    _check(hyps, refs)
    matches = total = 0
    for hyp, ref in zip(hyps, refs):
        m, t = sequence_counts(hyp, ref)
        matches += m
        total += t
    if total == 0:
        raise MetricsError("References contain no tokens")
    return _clamp(matches / total, upper=1.0)
