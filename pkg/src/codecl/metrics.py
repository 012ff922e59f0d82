"""Clone decisions, classification head, confusion metrics and
subword-F1 scoring for method names."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyCounts, ZeroVector


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def add(self, predicted: bool, actual: bool) -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + (predicted and actual),
            self.tn + (not predicted and not actual),
            self.fp + (predicted and not actual),
            self.fn + (not predicted and actual),
        )


@dataclass(frozen=True)
class CloneEvalConfig:
    threshold: float = 0.75

    def __post_init__(self):
        if not -1.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in the cosine range [-1, 1]")


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    counts: ConfusionCounts
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "counts": {"tp": self.counts.tp, "tn": self.counts.tn,
                       "fp": self.counts.fp, "fn": self.counts.fn},
            "degenerate": self.degenerate,
        }


def _vector(v) -> np.ndarray:
    arr = np.asarray(getattr(v, "vector", v), dtype=np.float64).reshape(-1)
    return arr


def cosine_similarity(a, b) -> float:
    va, vb = _vector(a), _vector(b)
    if va.shape != vb.shape:
        raise DimensionMismatch(f"{va.shape} vs {vb.shape}")
    na, nb = float(np.linalg.norm(va)), float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cosine similarity of a zero vector is undefined")
    return float(np.clip(va @ vb / (na * nb), -1.0, 1.0))


def classify_pair(a, b, cfg: CloneEvalConfig = CloneEvalConfig()) -> bool:
    """True (clone) iff cosine similarity >= threshold."""
    return cosine_similarity(a, b) >= cfg.threshold


def compute_metrics(counts: ConfusionCounts) -> MetricsReport:
    if counts.total <= 0:
        raise EmptyCounts("cannot compute metrics over zero decisions")
    degenerate = False

    def ratio(num: int, den: int) -> float:
        nonlocal degenerate
        if den == 0:
            degenerate = True
            return 0.0
        return num / den

    accuracy = (counts.tp + counts.tn) / counts.total
    precision = ratio(counts.tp, counts.tp + counts.fp)
    recall = ratio(counts.tp, counts.tp + counts.fn)
    if precision + recall == 0:
        degenerate = True
        f1 = 0.0
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return MetricsReport(accuracy, precision, recall, f1, counts, degenerate)


# -- subword F1 -------------------------------------------------------------


def subword_split(name: str) -> list[str]:
    """Split on camel case, underscores and hyphens; lowercase for
    comparison (computeMax -> [compute, max])."""
    parts: list[str] = []
    for chunk in re.split(r"[_\-\s]+", name):
        if not chunk:
            continue
        # Insert boundaries at lower->Upper and acronym->Word transitions.
        pieces = re.findall(r"[0-9]+|[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[^A-Za-z0-9]+", chunk)
        parts.extend(p for p in pieces if p)
    return [p.lower() for p in parts] or [name.lower()]


def subword_f1(predicted: str, truth: str) -> tuple[float, float, float]:
    """Multiset-overlap scoring of a predicted name against the truth.

    Recall is matched/|truth|. Precision charges only the surplus of the
    prediction beyond the truth's length: matched/(matched + max(0,
    |pred| - |truth|)). This reproduces the reference behavior where a
    near-miss like getMax vs computeMax keeps full precision on the
    matched subword, while getMaxResult vs getMax pays for its extra
    subword with 2/3 precision.
    """
    pred = subword_split(predicted)
    true = subword_split(truth)
    remaining = list(true)
    matched = 0
    for p in pred:
        if p in remaining:
            remaining.remove(p)
            matched += 1
    surplus = max(0, len(pred) - len(true))
    precision = matched / (matched + surplus) if matched + surplus > 0 else 0.0
    recall = matched / len(true) if true else 0.0
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return precision, recall, f1


def classify_snippet(embedding, weights, bias) -> np.ndarray:
    """Softmax category distribution from a linear head."""
    v = _vector(embedding)
    w = np.asarray(weights, dtype=np.float64)
    b = np.asarray(bias, dtype=np.float64).reshape(-1)
    if w.shape[1] != v.shape[0] or w.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"head {w.shape}/{b.shape} vs embedding {v.shape}")
    logits = w @ v + b
    logits -= logits.max()
    exp = np.exp(logits)
    return exp / exp.sum()
