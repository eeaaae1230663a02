"""Hashed word and character n-gram features.

Each word contributes its bracketed form ``<word>`` plus every character
n-gram of that form with 2 <= n <= 4. Features are FNV-1a hashed over UTF-8
bytes into a fixed number of buckets; collisions are accepted.
"""

import functools
from typing import List

import numpy as np

MIN_N = 2
MAX_N = 4
DEFAULT_BUCKETS = 2**21

_FNV_OFFSET = 2166136261
_FNV_PRIME = 16777619
_MASK32 = 0xFFFFFFFF


def fnv1a_32(data: bytes) -> int:
    """32-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK32
    return h


def word_ngrams(word: str, min_n: int = MIN_N, max_n: int = MAX_N) -> List[str]:
    """The bracketed word followed by its character n-grams.

    Example:
        >>> word_ngrams("ab")
        ['<ab>', '<a', 'ab', 'b>', '<ab', 'ab>', '<ab>']
    """
    bracketed = f"<{word}>"
    grams = [bracketed]
    for n in range(min_n, max_n + 1):
        grams.extend(bracketed[i : i + n] for i in range(len(bracketed) - n + 1))
    return grams


@functools.lru_cache(maxsize=1 << 16)
def _word_hashes(word: str, buckets: int) -> tuple:
    return tuple(fnv1a_32(g.encode("utf-8")) % buckets for g in word_ngrams(word))


def sentence_features(sentence: str, buckets: int = DEFAULT_BUCKETS) -> np.ndarray:
    """Bucket indices for every feature of a whitespace-tokenized sentence.

    Returns:
        int64 array, empty if the sentence has no words
    """
    indices: List[int] = []
    for word in sentence.split():
        indices.extend(_word_hashes(word, buckets))
    return np.asarray(indices, dtype=np.int64)
