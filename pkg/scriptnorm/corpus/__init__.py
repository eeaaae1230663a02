"""Corpus cleaning, tokenization, sentence extraction and vocabularies."""

from scriptnorm.corpus.cleaning import (
    CleanConfig,
    RemovalAudit,
    clean_file,
    clean_lines,
    clean_text,
)
from scriptnorm.corpus.sentences import extract_sentences, read_sentences
from scriptnorm.corpus.tokenizer import tokenize
from scriptnorm.corpus.vocabulary import Vocabulary, build_vocabulary

__all__ = [
    "CleanConfig",
    "RemovalAudit",
    "clean_file",
    "clean_lines",
    "clean_text",
    "extract_sentences",
    "read_sentences",
    "tokenize",
    "Vocabulary",
    "build_vocabulary",
]
