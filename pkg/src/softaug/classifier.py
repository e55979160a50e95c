"""Hashed bag-of-n-grams softmax linear classifier.

Features are unigrams and bigrams of the lowercased, whitespace-split
text, hashed with byte-level FNV-1a 64 masked to 18 bits, so the feature
map is identical across runs and platforms. Weights start at zero:
randomness enters training only through shuffling and augmentation.
Training is plain mini-batch SGD on soft-target cross entropy with early
stopping on validation accuracy.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, TrainingError
from .labels import soft_cross_entropy, softmax
from .policy import AugmentedExample

__all__ = [
    "N_BUCKETS",
    "FeatureVector",
    "LinearModel",
    "TrainConfig",
    "EpochStats",
    "fnv1a64",
    "featurize",
    "train",
    "predict",
    "evaluate",
    "save_model",
    "load_model",
]

N_BUCKETS = 1 << 18

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1

FeatureVector = dict[int, float]  # bucket index -> positive count


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit over raw bytes."""
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


def _bucket(key: str) -> int:
    return fnv1a64(key.encode("utf-8")) & (N_BUCKETS - 1)


def featurize(text: str) -> FeatureVector:
    """Unigram + bigram counts hashed into 2^18 buckets. Bigram keys join
    adjacent tokens with '_'. Empty text gives an empty vector."""
    tokens = text.lower().split()
    feats: FeatureVector = {}
    for tok in tokens:
        idx = _bucket(tok)
        feats[idx] = feats.get(idx, 0.0) + 1.0
    for a, b in zip(tokens, tokens[1:]):
        idx = _bucket(f"{a}_{b}")
        feats[idx] = feats.get(idx, 0.0) + 1.0
    return feats


@dataclass
class LinearModel:
    weights: np.ndarray  # (n_class, N_BUCKETS)
    bias: np.ndarray  # (n_class,)
    n_class: int

    @staticmethod
    def zeros(n_class: int) -> "LinearModel":
        return LinearModel(np.zeros((n_class, N_BUCKETS)), np.zeros(n_class), n_class)

    def copy(self) -> "LinearModel":
        return LinearModel(self.weights.copy(), self.bias.copy(), self.n_class)

    def logits(self, feats: FeatureVector) -> np.ndarray:
        z = self.bias.copy()
        for idx, count in feats.items():
            z += self.weights[:, idx] * count
        return z


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    batch_size: int = 32
    max_epochs: int = 10
    patience: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0 or self.batch_size < 1 or self.max_epochs < 1:
            raise DomainError("learning_rate, batch_size, max_epochs must be positive")
        if not 1 <= self.patience <= self.max_epochs:
            raise DomainError("patience must be in [1, max_epochs]")


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    train_loss: float
    val_accuracy: float


def train(
    train_examples: list[AugmentedExample],
    val: list[tuple[str, int]],
    n_class: int,
    cfg: TrainConfig,
    rng: random.Random,
) -> tuple[LinearModel, list[EpochStats]]:
    """Mini-batch SGD with per-epoch shuffling; early-stops after
    `patience` epochs without a validation accuracy improvement and
    returns the best snapshot (ties resolve to the earliest epoch)."""
    if not train_examples:
        raise DomainError("empty training set")
    if not val:
        raise DomainError("empty validation set")
    for ex in train_examples:
        if len(ex.soft_label) != n_class:
            raise DomainError(
                f"soft label has {len(ex.soft_label)} classes, expected {n_class}"
            )

    feats = [featurize(ex.text) for ex in train_examples]
    targets = [np.asarray(ex.soft_label, dtype=float) for ex in train_examples]
    val_feats = [(featurize(text), y) for text, y in val]

    model = LinearModel.zeros(n_class)
    best = model.copy()
    best_acc = -1.0
    stale = 0
    history: list[EpochStats] = []

    order = list(range(len(train_examples)))
    for epoch in range(1, cfg.max_epochs + 1):
        rng.shuffle(order)
        loss_sum = 0.0
        for start in range(0, len(order), cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            scale = cfg.learning_rate / len(batch)
            bias_grad = np.zeros(n_class)
            for i in batch:
                probs = softmax(model.logits(feats[i]))
                loss_sum += soft_cross_entropy(probs, targets[i])
                g = probs - targets[i]
                bias_grad += g
                for idx, count in feats[i].items():
                    model.weights[:, idx] -= scale * count * g
            model.bias -= scale * bias_grad
        mean_loss = loss_sum / len(order)
        if not np.isfinite(mean_loss):
            raise TrainingError(f"non-finite training loss at epoch {epoch}")

        val_acc = _accuracy(model, val_feats)
        history.append(EpochStats(epoch, mean_loss, val_acc))
        if val_acc > best_acc:
            best_acc = val_acc
            best = model.copy()
            stale = 0
        else:
            stale += 1
            if stale >= cfg.patience:
                break
    return best, history


def predict(model: LinearModel, text: str) -> np.ndarray:
    """Class probabilities: softmax(weights . featurize(text) + bias)."""
    return softmax(model.logits(featurize(text)))


def _accuracy(model: LinearModel, feat_pairs: list[tuple[FeatureVector, int]]) -> float:
    correct = sum(
        1 for feats, y in feat_pairs if int(np.argmax(model.logits(feats))) == y
    )
    return correct / len(feat_pairs)


def evaluate(model: LinearModel, data: list[tuple[str, int]]) -> float:
    """Fraction of examples whose argmax prediction matches the label.
    Argmax ties break toward the lowest class index."""
    if not data:
        raise DomainError("empty evaluation set")
    return _accuracy(model, [(featurize(text), y) for text, y in data])


_CHECKPOINT_VERSION = 1


def save_model(model: LinearModel, path):
    """Checkpoint: compressed npz with version, n_class, weights, bias."""
    # write through a handle so numpy keeps the caller's extension as-is
    with open(path, "wb") as f:
        np.savez_compressed(
            f,
            version=np.int64(_CHECKPOINT_VERSION),
            n_class=np.int64(model.n_class),
            weights=model.weights,
            bias=model.bias,
        )


def load_model(path) -> LinearModel:
    with np.load(path) as data:
        version = int(data["version"])
        if version != _CHECKPOINT_VERSION:
            raise DomainError(f"unsupported checkpoint version {version}")
        return LinearModel(data["weights"], data["bias"], int(data["n_class"]))
