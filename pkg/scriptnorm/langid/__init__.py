"""Character n-gram language identification."""

from scriptnorm.langid.features import fnv1a_32, sentence_features, word_ngrams
from scriptnorm.langid.harness import (
    CONFUSABLE_GROUPS,
    LabelData,
    LangIdEval,
    Setup,
    SetupKind,
    TopKScores,
    confusion_group_share,
    dump_test_set,
    eval_langid,
    load_test_set,
    noisy_test_split,
    predict_batch,
    train_langid,
)
from scriptnorm.langid.model import LangIdModel, LangIdParams, predict_topk, train_model

__all__ = [
    "fnv1a_32",
    "sentence_features",
    "word_ngrams",
    "CONFUSABLE_GROUPS",
    "LabelData",
    "LangIdEval",
    "Setup",
    "SetupKind",
    "TopKScores",
    "confusion_group_share",
    "dump_test_set",
    "eval_langid",
    "load_test_set",
    "noisy_test_split",
    "predict_batch",
    "train_langid",
    "LangIdModel",
    "LangIdParams",
    "predict_topk",
    "train_model",
]
