"""Beam-search decoding under the noisy-channel model.

A hypothesis consumes the noisy sentence left to right. At each code-point
position it may read any channel key that matches there and emit one of that
key's clean candidates, scored by the channel weight and the character LM.
Positions without a matching key (whitespace, unknown characters) are copied
and still scored by the LM. Hypotheses that reach the same position with the
same LM history are recombined.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Tuple

from scriptnorm.exceptions import NormalizerError
from scriptnorm.metrics.evaluate import EvalReport, evaluate
from scriptnorm.normalizer.channel import ChannelModel
from scriptnorm.normalizer.lm import EOS, CharLM
from scriptnorm.runtime.parallel import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_BEAM_WIDTH = 8


@dataclass(frozen=True)
class _Hypothesis:
    score: float
    output: str
    history: str

    def rank(self) -> Tuple[float, str]:
        return (-self.score, self.output)


def _extend(hyp: _Hypothesis, text: str, weight: float, lm: CharLM) -> _Hypothesis:
    score = hyp.score + math.log(weight)
    history = hyp.history
    for ch in text:
        score += lm.log_prob(history, ch)
        history = lm.advance(history, ch)
    return _Hypothesis(score, hyp.output + text, history)


def beam_normalize(
    noisy: str,
    channel: ChannelModel,
    lm: CharLM,
    beam_width: int = DEFAULT_BEAM_WIDTH,
) -> str:
    """Most probable clean sentence for ``noisy`` under channel and LM.

    Score ties are broken by the lexicographically smaller output, so the
    result is deterministic.

    Raises:
        NormalizerError: If ``beam_width`` is below 1
    """
    if beam_width < 1:
        raise NormalizerError(f"beam_width must be at least 1, got {beam_width}")
    if not noisy:
        return noisy

    keys = channel.key_strings()
    lengths = sorted({len(k) for k in keys}, reverse=True)
    n = len(noisy)
    start = _Hypothesis(0.0, "", lm.start_history())
    agenda: Dict[int, Dict[str, _Hypothesis]] = {0: {start.history: start}}

    for pos in range(n + 1):
        bucket = agenda.pop(pos, None)
        if not bucket:
            continue
        beam = sorted(bucket.values(), key=_Hypothesis.rank)[:beam_width]
        if pos == n:
            finished = [
                _Hypothesis(h.score + lm.log_prob(h.history, EOS), h.output, h.history)
                for h in beam
            ]
            return min(finished, key=_Hypothesis.rank).output

        moves: List[Tuple[int, str, float]] = []
        for length in lengths:
            piece = noisy[pos : pos + length]
            if len(piece) == length and piece in keys:
                for clean, weight in channel.options(keys[piece]):
                    moves.append((pos + length, "".join(clean), weight))
        if not moves:
            moves.append((pos + 1, noisy[pos], 1.0))

        for hyp in beam:
            for end, text, weight in moves:
                new = _extend(hyp, text, weight, lm)
                slot = agenda.setdefault(end, {})
                current = slot.get(new.history)
                if current is None or new.rank() < current.rank():
                    slot[new.history] = new

    raise NormalizerError("Decoder ran out of hypotheses")


def normalize_lines(
    lines: Iterable[str],
    channel: ChannelModel,
    lm: CharLM,
    beam_width: int = DEFAULT_BEAM_WIDTH,
    threads: int = 1,
) -> List[str]:
    """Decode every line independently, preserving order."""
    checksums = {channel.matrix_checksum, lm.matrix_checksum} - {""}
    if len(checksums) > 1:
        logger.warning("Channel and LM were built against different alignment matrices")
    return ordered_map(lambda line: beam_normalize(line, channel, lm, beam_width), lines, threads)


def score_hypotheses(hyp_file: str | Path, ref_file: str | Path) -> EvalReport:
    """Score externally produced hypotheses with the standard metrics."""
    return evaluate(hyp_file, ref_file, baseline_mode=False)
