"""Synthetic noisy/clean parallel data generation."""

from scriptnorm.noise.datasets import (
    ALL_LEVEL,
    NOISE_LEVELS,
    NoiseConfig,
    ParallelDataset,
    SentencePair,
    dataset_level,
    generate_parallel_datasets,
    load_dataset_pairs,
)
from scriptnorm.noise.injector import (
    NoiseTrace,
    derive_rng,
    inject_noise,
    inject_noise_with_trace,
    replaceable_positions,
    replacement_count,
)

__all__ = [
    "ALL_LEVEL",
    "NOISE_LEVELS",
    "NoiseConfig",
    "ParallelDataset",
    "SentencePair",
    "dataset_level",
    "generate_parallel_datasets",
    "load_dataset_pairs",
    "NoiseTrace",
    "derive_rng",
    "inject_noise",
    "inject_noise_with_trace",
    "replaceable_positions",
    "replacement_count",
]
