"""Labeled datasets: ingestion, stratified subsampling, and splits.

A dataset file is CSV/TSV with a `text,label` header or JSON Lines with
"text"/"label" keys; an optional `split` column/key assigns rows to
train/val/test (default train). Label strings map to contiguous class
indices, either via a `<path>.labels.json` sidecar (a JSON array fixing
the order) or by first appearance in the file.
"""
from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError, DomainError

__all__ = [
    "LabeledDataset",
    "load_dataset",
    "subsample",
    "make_val_split",
    "make_synthetic_reviews",
]

Example = tuple[str, int]

_SPLIT_NAMES = ("train", "val", "test")


@dataclass
class LabeledDataset:
    name: str
    n_class: int
    splits: dict[str, list[Example]]
    label_names: list[str] | None = None

    def split(self, name: str) -> list[Example]:
        part = self.splits.get(name, [])
        if not part:
            raise DomainError(f"dataset {self.name!r} has no {name!r} split")
        return part


def load_dataset(path, fmt: str | None = None, name: str | None = None) -> LabeledDataset:
    """Load CSV/TSV/JSONL into a LabeledDataset. fmt defaults from the
    file extension. Raises DataError naming the offending line."""
    path = Path(path)
    if fmt is None:
        fmt = {".csv": "csv", ".tsv": "tsv", ".jsonl": "jsonl"}.get(path.suffix)
        if fmt is None:
            raise DataError(f"cannot infer format from {path.name!r}; pass fmt")
    if fmt not in ("csv", "tsv", "jsonl"):
        raise DataError(f"unsupported format {fmt!r}")

    label_map: dict[str, int] = {}
    fixed_labels = False
    sidecar = path.with_name(path.name + ".labels.json")
    if sidecar.exists():
        names = json.loads(sidecar.read_text("utf-8"))
        label_map = {str(lbl): i for i, lbl in enumerate(names)}
        fixed_labels = True

    rows: list[tuple[str, str, str]] = []  # (text, label string, split)
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as e:
                    raise DataError(f"{path.name} line {lineno}: invalid JSON ({e.msg})")
                if "text" not in obj or "label" not in obj:
                    raise DataError(f"{path.name} line {lineno}: missing text/label")
                rows.append((str(obj["text"]), str(obj["label"]), str(obj.get("split", "train"))))
    else:
        delim = "," if fmt == "csv" else "\t"
        with open(path, encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f, delimiter=delim)
            if reader.fieldnames is None or not {"text", "label"} <= set(reader.fieldnames):
                raise DataError(f"{path.name}: header must include text,label")
            for lineno, row in enumerate(reader, start=2):
                if row["text"] is None or row["label"] is None:
                    raise DataError(f"{path.name} line {lineno}: missing field")
                rows.append((row["text"], row["label"], row.get("split") or "train"))
    if not rows:
        raise DataError(f"{path.name}: no examples")

    splits: dict[str, list[Example]] = {s: [] for s in _SPLIT_NAMES}
    for i, (text, label, split) in enumerate(rows, start=1):
        if label not in label_map:
            if fixed_labels:
                raise DataError(f"{path.name} row {i}: unknown label {label!r}")
            label_map[label] = len(label_map)
        if split not in splits:
            raise DataError(f"{path.name} row {i}: unknown split {split!r}")
        splits[split].append((text, label_map[label]))

    label_names = [lbl for lbl, _ in sorted(label_map.items(), key=lambda kv: kv[1])]
    return LabeledDataset(
        name=name or path.stem,
        n_class=len(label_map),
        splits={s: part for s, part in splits.items() if part},
        label_names=label_names,
    )


def _largest_remainder_quotas(counts: list[int], n: int) -> list[int]:
    """Integer quotas proportional to counts summing to n, largest-remainder
    rounding with ties toward the lower class index, each nonempty class
    getting >= 1 when n allows."""
    total = sum(counts)
    exact = [n * c / total for c in counts]
    quotas = [int(q) for q in exact]
    leftover = n - sum(quotas)
    by_remainder = sorted(range(len(counts)), key=lambda c: (-(exact[c] - quotas[c]), c))
    for c in by_remainder[:leftover]:
        quotas[c] += 1
    # lift empty-quota classes when feasible, taking from the largest quota
    nonempty = [c for c in range(len(counts)) if counts[c] > 0]
    if n >= len(nonempty):
        for c in nonempty:
            while quotas[c] < 1:
                donor = max(range(len(counts)), key=lambda d: (quotas[d], -d))
                quotas[donor] -= 1
                quotas[c] += 1
    for c, q in enumerate(quotas):
        if q > counts[c]:
            raise DomainError(f"class {c} has only {counts[c]} examples, need {q}")
    return quotas


def _stratified_pick(
    examples: list[Example], n_class: int, quotas: list[int], rng: random.Random
) -> tuple[list[Example], list[Example]]:
    """Pick quota[c] examples per class without replacement; returns
    (picked, rest), both preserving original order."""
    by_class: dict[int, list[int]] = {c: [] for c in range(n_class)}
    for i, (_, y) in enumerate(examples):
        by_class[y].append(i)
    chosen: set[int] = set()
    for c in range(n_class):
        chosen.update(rng.sample(by_class[c], quotas[c]))
    picked = [ex for i, ex in enumerate(examples) if i in chosen]
    rest = [ex for i, ex in enumerate(examples) if i not in chosen]
    return picked, rest


def subsample(data: LabeledDataset, n: int, seed: int) -> LabeledDataset:
    """Stratified sample of n train examples (class-proportional quotas,
    largest-remainder rounding); val/test pass through unchanged."""
    train = data.split("train")
    if n > len(train):
        raise DomainError(f"n={n} exceeds train size {len(train)}")
    counts = [0] * data.n_class
    for _, y in train:
        counts[y] += 1
    present = sum(1 for c in counts if c > 0)
    if n < present:
        raise DomainError(f"cannot stratify: n={n} < {present} classes present")
    quotas = _largest_remainder_quotas(counts, n)
    picked, _ = _stratified_pick(train, data.n_class, quotas, random.Random(seed))
    splits = dict(data.splits)
    splits["train"] = picked
    return LabeledDataset(data.name, data.n_class, splits, data.label_names)


def make_val_split(
    train: list[Example], fraction: float, seed: int
) -> tuple[list[Example], list[Example]]:
    """Stratified holdout of round(fraction*N) examples as validation."""
    if not 0.0 < fraction < 1.0:
        raise DomainError(f"fraction must be in (0, 1), got {fraction}")
    if not train:
        raise DomainError("empty train list")
    n_class = max(y for _, y in train) + 1
    counts = [0] * n_class
    for _, y in train:
        counts[y] += 1
    present = sum(1 for c in counts if c > 0)
    n_val = max(present, int(fraction * len(train) + 0.5))
    if n_val >= len(train):
        raise DomainError("holdout would leave no training examples")
    quotas = _largest_remainder_quotas(counts, n_val)
    val, rest = _stratified_pick(train, n_class, quotas, random.Random(seed))
    return rest, val


_POS_FAMILIES = [
    ["great", "good", "fine", "nice", "decent"],
    ["excellent", "outstanding", "superb", "exceptional"],
    ["wonderful", "marvelous", "fabulous", "fantastic", "terrific"],
    ["amazing", "astonishing", "incredible", "stunning"],
    ["delightful", "charming", "enchanting", "lovely"],
    ["enjoyable", "entertaining", "amusing", "engaging"],
    ["touching", "moving", "poignant", "heartfelt"],
    ["clever", "smart", "ingenious", "witty"],
    ["funny", "humorous", "comical", "hilarious"],
    ["exciting", "thrilling", "gripping", "exhilarating"],
    ["compelling", "captivating", "absorbing", "riveting"],
    ["memorable", "unforgettable", "remarkable", "notable"],
]
_NEG_FAMILIES = [
    ["terrible", "awful", "dreadful", "horrible", "atrocious"],
    ["bad", "poor", "lousy", "inferior"],
    ["boring", "tedious", "dull", "monotonous", "tiresome"],
    ["disappointing", "unsatisfying", "underwhelming", "lackluster"],
    ["weak", "feeble", "flimsy", "anemic"],
    ["messy", "sloppy", "disorganized", "chaotic"],
    ["annoying", "irritating", "aggravating", "vexing"],
    ["bland", "insipid", "vapid", "flat"],
    ["predictable", "formulaic", "unoriginal", "derivative"],
    ["clumsy", "awkward", "bungling", "inept"],
    ["confusing", "puzzling", "baffling", "perplexing"],
    ["stupid", "foolish", "silly", "idiotic"],
]
_NOUNS = ["movie", "film", "plot", "acting", "story", "script", "dialogue",
          "ending", "cast", "direction", "pacing", "soundtrack"]
_TEMPLATES = [
    "the {noun} was {adj} and the {noun2} felt {adj2}",
    "i thought the {noun} was really {adj} with a {adj2} {noun2}",
    "a {adj} {noun} with {adj2} {noun2} throughout",
    "critics called the {noun} {adj} but the {noun2} was {adj2}",
    "overall the {noun} seemed {adj} even if the {noun2} looked {adj2}",
    "this {noun} is {adj} and its {noun2} is downright {adj2}",
]


def make_synthetic_reviews(
    n_train: int = 2000, n_test: int = 600, seed: int = 7, noise: float = 0.08
) -> LabeledDataset:
    """Deterministic 2-class movie-review surrogate for desk-scale runs.

    Sentiment words come from synonym families present in the bundled
    lexicon, so synonym-based augmentation can surface words a small
    subsample never saw. `noise` is the chance a sentence mixes in one
    word from the opposite class.
    """
    rng = random.Random(seed)

    def sentence(label: int) -> str:
        families = _POS_FAMILIES if label == 1 else _NEG_FAMILIES
        other = _NEG_FAMILIES if label == 1 else _POS_FAMILIES
        adj = rng.choice(rng.choice(families))
        adj2 = rng.choice(rng.choice(families))
        if rng.random() < noise:
            adj2 = rng.choice(rng.choice(other))
        noun, noun2 = rng.sample(_NOUNS, 2)
        template = rng.choice(_TEMPLATES)
        return template.format(noun=noun, noun2=noun2, adj=adj, adj2=adj2)

    def build(n: int) -> list[Example]:
        return [(sentence(i % 2), i % 2) for i in range(n)]

    return LabeledDataset(
        name="synthetic-reviews",
        n_class=2,
        splits={"train": build(n_train), "test": build(n_test)},
        label_names=["negative", "positive"],
    )
