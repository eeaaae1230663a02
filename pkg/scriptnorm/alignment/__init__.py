"""Spelling pairs, Needleman-Wunsch alignment and the character-alignment matrix."""

from scriptnorm.alignment.matrix import (
    CharAlignmentMatrix,
    MatrixEntry,
    build_alignment_matrix,
    count_alignments,
)
from scriptnorm.alignment.needleman_wunsch import (
    GAP,
    Alignment,
    AlignmentParams,
    needleman_wunsch,
)
from scriptnorm.alignment.spelling_pairs import (
    Provenance,
    SpellingPair,
    enumerate_variants,
    extract_spelling_pairs,
    load_bilingual_dictionary,
    load_lexicon,
    load_pairs,
    save_pairs,
)

__all__ = [
    "CharAlignmentMatrix",
    "MatrixEntry",
    "build_alignment_matrix",
    "count_alignments",
    "GAP",
    "Alignment",
    "AlignmentParams",
    "needleman_wunsch",
    "Provenance",
    "SpellingPair",
    "enumerate_variants",
    "extract_spelling_pairs",
    "load_bilingual_dictionary",
    "load_lexicon",
    "load_pairs",
    "save_pairs",
]
