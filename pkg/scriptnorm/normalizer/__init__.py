"""Noisy-channel script normalizer."""

from scriptnorm.normalizer.channel import ChannelModel, fit_channel
from scriptnorm.normalizer.decoder import (
    DEFAULT_BEAM_WIDTH,
    beam_normalize,
    normalize_lines,
    score_hypotheses,
)
from scriptnorm.normalizer.lm import CharLM, fit_lm

__all__ = [
    "ChannelModel",
    "fit_channel",
    "DEFAULT_BEAM_WIDTH",
    "beam_normalize",
    "normalize_lines",
    "score_hypotheses",
    "CharLM",
    "fit_lm",
]
