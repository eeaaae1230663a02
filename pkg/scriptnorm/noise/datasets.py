"""Noisy/clean parallel datasets at graded noise levels."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from scriptnorm.alignment.matrix import CharAlignmentMatrix
from scriptnorm.corpus.tokenizer import tokenize
from scriptnorm.exceptions import NoiseError
from scriptnorm.inventory.inventory import ScriptInventory
from scriptnorm.noise.injector import ALL_STREAM, LEVEL_STREAM, derive_rng, inject_noise_with_trace
from scriptnorm.runtime.parallel import ordered_map

logger = logging.getLogger(__name__)

NOISE_LEVELS: Tuple[int, ...] = (20, 40, 60, 80, 100)
ALL_LEVEL = "all"
MAX_SEED = 2**64 - 1

Level = Union[Literal[20, 40, 60, 80, 100], Literal["all"]]


class NoiseConfig(BaseModel):
    """Noise generation settings.

    ``level`` is one of the five percentages, or ``"all"`` for every level
    plus their merged union.
    """

    level: Level = ALL_LEVEL
    seed: int = Field(ge=0, le=MAX_SEED)
    dedup: bool = True

    def levels(self) -> Tuple[int, ...]:
        return NOISE_LEVELS if self.level == ALL_LEVEL else (int(self.level),)


@dataclass(frozen=True)
class SentencePair:
    """One noisy/clean pair.

    Attributes:
        noisy: Sentence after noise injection
        clean: Untouched source sentence
        level: Noise percentage used
        pair_index: Index of the clean sentence in the input corpus
        substitutions: Number of replaced positions
    """
    noisy: str
    clean: str
    level: int
    pair_index: int
    substitutions: int = 0


@dataclass
class ParallelDataset:
    """Pairs for one level (or the merged ``all`` dataset)."""

    src_lang: str
    dom_lang: str
    level: Union[int, str]
    seed: int
    pairs: List[SentencePair] = field(default_factory=list)
    duplicates_removed: int = 0

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def filename(self) -> str:
        return f"{self.src_lang}_{self.dom_lang}.{self.level}.tsv"

    def to_tsv(self) -> str:
        return "".join(f"{p.noisy}\t{p.clean}\n" for p in self.pairs)

    def save(self, output_dir: str | Path) -> Path:
        path = Path(output_dir) / self.filename
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_tsv(), encoding="utf-8")
        return path

    def stats(self) -> Dict[str, float]:
        """Pair and word counts plus substitution statistics."""
        substitutions = sum(p.substitutions for p in self.pairs)
        return {
            "pairs": len(self.pairs),
            "noisy_words": sum(len(tokenize(p.noisy)) for p in self.pairs),
            "clean_words": sum(len(tokenize(p.clean)) for p in self.pairs),
            "substitutions": substitutions,
            "mean_substitutions": substitutions / len(self.pairs) if self.pairs else 0.0,
            "duplicates_removed": self.duplicates_removed,
        }


def _level_pairs(
    corpus: Sequence[str],
    matrix: CharAlignmentMatrix,
    level: int,
    seed: int,
    stream: int,
    threads: int,
    inventory: Optional[ScriptInventory] = None,
) -> List[SentencePair]:
    def work(item: Tuple[int, str]) -> SentencePair:
        index, sentence = item
        trace = inject_noise_with_trace(
            sentence, matrix, level, derive_rng(seed, level, index, stream), inventory
        )
        return SentencePair(trace.noisy, sentence, level, index, trace.substitutions)

    return ordered_map(work, list(enumerate(corpus)), threads)


def generate_parallel_datasets(
    corpus: Sequence[str],
    matrix: CharAlignmentMatrix,
    cfg: NoiseConfig,
    threads: int = 1,
    inventory: Optional[ScriptInventory] = None,
) -> List[ParallelDataset]:
    """Generate one dataset per configured level, plus ``all`` when requested.

    Every sentence's generator is derived from (seed, level, index, stream), so
    the output does not depend on ``threads``. With ``inventory``, replaceable
    positions follow its grapheme segmentation. The ``all`` dataset re-samples
    every level on its own stream, concatenates them and, with ``dedup``, keeps
    the first occurrence of each (noisy, clean) pair.

    Raises:
        NoiseError: If the corpus or the matrix is empty
    """
    if not corpus:
        raise NoiseError("Cannot generate datasets from an empty corpus")
    if matrix.is_empty():
        raise NoiseError("Cannot inject noise with an empty alignment matrix")

    datasets = []
    for level in cfg.levels():
        pairs = _level_pairs(corpus, matrix, level, cfg.seed, LEVEL_STREAM, threads, inventory)
        datasets.append(
            ParallelDataset(matrix.src_lang, matrix.dom_lang, level, cfg.seed, pairs)
        )
        logger.info(f"Level {level}: {len(pairs)} pairs")

    if cfg.level == ALL_LEVEL:
        merged: List[SentencePair] = []
        for level in NOISE_LEVELS:
            merged.extend(
                _level_pairs(corpus, matrix, level, cfg.seed, ALL_STREAM, threads, inventory)
            )
        removed = 0
        if cfg.dedup:
            seen = set()
            unique = []
            for pair in merged:
                key = (pair.noisy, pair.clean)
                if key in seen:
                    continue
                seen.add(key)
                unique.append(pair)
            removed = len(merged) - len(unique)
            merged = unique
        datasets.append(
            ParallelDataset(
                matrix.src_lang, matrix.dom_lang, ALL_LEVEL, cfg.seed, merged, removed
            )
        )
        logger.info(f"Level all: {len(merged)} pairs ({removed} duplicates removed)")

    return datasets


def load_dataset_pairs(path: str | Path) -> List[Tuple[str, str]]:
    """Read ``noisy<TAB>clean`` lines."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise NoiseError(f"Cannot read dataset {path}: {e}")
    pairs = []
    for line_no, line in enumerate(content.split("\n"), start=1):
        if not line:
            continue
        noisy, sep, clean = line.partition("\t")
        if not sep:
            raise NoiseError(f"{path}:{line_no}: expected 'noisy<TAB>clean'")
        pairs.append((noisy, clean))
    return pairs


def dataset_level(path: str | Path) -> Optional[Union[int, str]]:
    """Noise level encoded in a dataset filename, e.g. ``ckb_fas.60.tsv`` -> 60."""
    parts = Path(path).name.split(".")
    if len(parts) < 3:
        return None
    token = parts[-2]
    if token == ALL_LEVEL:
        return ALL_LEVEL
    return int(token) if token.isdigit() else None
