"""Averaged-embedding softmax classifier over hashed n-gram features."""

import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from scriptnorm.exceptions import LangIdError
from scriptnorm.langid.features import DEFAULT_BUCKETS, sentence_features

logger = logging.getLogger(__name__)

EMBED_DIM = 16
MAGIC = b"SNLANGID\x01"
_HEADER = struct.Struct("<IIII")
_LABEL_LEN = struct.Struct("<H")


class LangIdParams(BaseModel):
    """Training and sampling settings for the language identifier."""

    buckets: int = Field(default=DEFAULT_BUCKETS, ge=1, le=2**32 - 1)
    lr: float = Field(default=0.1, gt=0)
    epochs: int = Field(default=25, ge=1)
    cap: int = Field(default=6000, ge=1)
    split: float = Field(default=0.8, gt=0, lt=1)


@dataclass
class LangIdModel:
    """Trained classifier.

    Attributes:
        labels: Language codes, index-aligned with ``output`` rows
        embeddings: ``buckets x 16`` feature vectors
        output: ``labels x 16`` output weights
    """
    labels: List[str]
    embeddings: np.ndarray
    output: np.ndarray

    def __post_init__(self) -> None:
        if len(self.labels) < 2 or len(set(self.labels)) != len(self.labels):
            raise LangIdError(f"A model needs at least two distinct labels: {self.labels}")
        if self.embeddings.ndim != 2 or self.embeddings.shape[1] != EMBED_DIM:
            raise LangIdError(f"Embeddings must be buckets x {EMBED_DIM}")
        if self.output.shape != (len(self.labels), EMBED_DIM):
            raise LangIdError(f"Output weights must be {len(self.labels)} x {EMBED_DIM}")
        if not (np.isfinite(self.output).all() and np.isfinite(self.embeddings).all()):
            raise LangIdError("Model weights must be finite")

    @property
    def buckets(self) -> int:
        return int(self.embeddings.shape[0])

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LangIdError(f"Label {label!r} is not known to the model")

    def predict_proba(self, sentence: str) -> np.ndarray:
        """Softmax distribution over ``labels``.

        Raises:
            LangIdError: If the sentence has no words
        """
        features = sentence_features(sentence, self.buckets)
        if features.size == 0:
            raise LangIdError("Cannot identify the language of an empty sentence")
        hidden = self.embeddings[features].mean(axis=0, dtype=np.float64)
        return _softmax(self.output.astype(np.float64) @ hidden)

    def save(self, path: str | Path) -> None:
        """Write the binary model: magic, header, label table, weight blocks.

        Only non-zero embedding rows are stored, preceded by their indices.
        """
        rows = np.flatnonzero(np.any(self.embeddings != 0, axis=1)).astype("<u4")
        try:
            with open(path, "wb") as handle:
                handle.write(MAGIC)
                handle.write(_HEADER.pack(len(self.labels), self.buckets, EMBED_DIM, rows.size))
                for label in self.labels:
                    encoded = label.encode("utf-8")
                    handle.write(_LABEL_LEN.pack(len(encoded)))
                    handle.write(encoded)
                handle.write(self.output.astype("<f4").tobytes(order="C"))
                handle.write(rows.tobytes())
                handle.write(self.embeddings[rows].astype("<f4").tobytes(order="C"))
        except OSError as e:
            raise LangIdError(f"Cannot write model {path}: {e}")
        logger.info(f"Saved language-id model to {path} ({rows.size} embedding rows)")

    @classmethod
    def load(cls, path: str | Path) -> "LangIdModel":
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise LangIdError(f"Cannot read model {path}: {e}")
        if not data.startswith(MAGIC):
            raise LangIdError(f"{path} is not a language-id model")
        try:
            offset = len(MAGIC)
            n_labels, buckets, dim, n_rows = _HEADER.unpack_from(data, offset)
            offset += _HEADER.size
            if dim != EMBED_DIM:
                raise LangIdError(f"{path}: unsupported embedding size {dim}")
            labels = []
            for _ in range(n_labels):
                (length,) = _LABEL_LEN.unpack_from(data, offset)
                offset += _LABEL_LEN.size
                labels.append(data[offset : offset + length].decode("utf-8"))
                offset += length
            output = np.frombuffer(data, dtype="<f4", count=n_labels * dim, offset=offset)
            offset += output.nbytes
            rows = np.frombuffer(data, dtype="<u4", count=n_rows, offset=offset)
            offset += rows.nbytes
            values = np.frombuffer(data, dtype="<f4", count=n_rows * dim, offset=offset)
        except (struct.error, ValueError, UnicodeDecodeError) as e:
            raise LangIdError(f"{path}: truncated or corrupt model ({e})")
        embeddings = np.zeros((buckets, dim), dtype=np.float32)
        embeddings[rows] = values.reshape(n_rows, dim)
        return cls(
            labels=labels,
            embeddings=embeddings,
            output=output.reshape(n_labels, dim).astype(np.float32),
        )


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = np.exp(logits - logits.max())
    return shifted / shifted.sum()


def train_model(
    examples: Sequence[Tuple[str, str]],
    labels: Sequence[str],
    params: Optional[LangIdParams] = None,
    seed: int = 0,
) -> LangIdModel:
    """Fit embeddings and output weights by SGD on softmax cross-entropy.

    The learning rate decays linearly to zero over all updates. Example order
    is reshuffled each epoch from a generator seeded with ``seed``. Buckets no
    training sentence hashes into are zeroed after training.

    Args:
        examples: (sentence, label) training pairs
        labels: Label order of the model
        params: Hyper-parameters
        seed: Seed for initialization and shuffling

    Raises:
        LangIdError: On unknown labels or an empty training set
    """
    params = params or LangIdParams()
    labels = list(labels)
    label_ids = {label: i for i, label in enumerate(labels)}
    prepared = []
    for sentence, label in examples:
        if label not in label_ids:
            raise LangIdError(f"Training label {label!r} not in the label set")
        features = sentence_features(sentence, params.buckets)
        if features.size:
            prepared.append((features, label_ids[label]))
    if not prepared:
        raise LangIdError("No usable training sentences")

    rng = np.random.default_rng([seed, 1])
    embeddings = (rng.random((params.buckets, EMBED_DIM), dtype=np.float32) * 2 - 1) / EMBED_DIM
    output = np.zeros((len(labels), EMBED_DIM), dtype=np.float32)
    touched = np.zeros(params.buckets, dtype=bool)
    for features, _ in prepared:
        touched[features] = True

    total_steps = params.epochs * len(prepared)
    step = 0
    for epoch in range(params.epochs):
        loss = 0.0
        for i in rng.permutation(len(prepared)):
            features, y = prepared[i]
            lr = params.lr * (1.0 - step / total_steps)
            step += 1

            hidden = embeddings[features].mean(axis=0)
            probs = _softmax(output @ hidden)
            loss -= float(np.log(max(probs[y], 1e-12)))
            grad = probs.astype(np.float32)
            grad[y] -= 1.0
            grad_hidden = output.T @ grad
            output -= lr * np.outer(grad, hidden)
            np.add.at(embeddings, features, -lr * grad_hidden / features.size)
        logger.debug(f"Epoch {epoch + 1}/{params.epochs}: mean loss {loss / len(prepared):.4f}")

    embeddings[~touched] = 0.0
    logger.info(
        f"Trained language-id model: {len(labels)} labels, {len(prepared)} sentences, "
        f"{params.epochs} epochs"
    )
    return LangIdModel(labels=labels, embeddings=embeddings, output=output)


def predict_topk(model: LangIdModel, sentence: str, k: int = 1) -> List[Tuple[str, float]]:
    """The ``k`` most probable labels, descending; ties go to the smaller label.

    Raises:
        LangIdError: If the sentence is empty or ``k`` is out of range
    """
    if not 1 <= k <= len(model.labels):
        raise LangIdError(f"k must be between 1 and {len(model.labels)}, got {k}")
    if not sentence.strip():
        raise LangIdError("Cannot identify the language of an empty sentence")
    probs = model.predict_proba(sentence)
    ranked = sorted(zip(model.labels, probs.tolist()), key=lambda lp: (-lp[1], lp[0]))
    return ranked[:k]
