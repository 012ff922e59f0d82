"""MoCo-style contrastive training: query/momentum encoder pair, FIFO
negative queue, InfoNCE over in-batch + queued negatives, and the
supervised loss combinations with a trainable mixing weight alpha
(stored unconstrained, squashed through a sigmoid so it stays in (0,1)).
"""

from __future__ import annotations

import json
import logging
import math
import random
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import torch
import torch.nn.functional as F
from torch import nn

from .augment import AugmentConfig, generate_anchor
from .core import SourceSnippet, normalize
from .encoder import CodeEmbedder, EncoderConfig, build_embedder, save_checkpoint
from .errors import (
    BatchTooSmall,
    CollapseWarning,
    DimensionMismatch,
    NonPositiveTemperature,
    ShapeMismatch,
)
from .extract import TokenSequence, extract_path
from .syntax import parse_text
from .tokenizer import Vocabulary, encode

log = logging.getLogger(__name__)


# -- pure loss helpers ---------------------------------------------------------


def info_nce(q, k_pos, negatives, temperature: float) -> float:
    """-log( exp(q.k+/tau) / (exp(q.k+/tau) + sum exp(q.k-/tau)) ).

    Computed with a stable log-sum-exp; zero negatives give loss 0.
    """
    if temperature <= 0:
        raise NonPositiveTemperature(f"temperature must be > 0, got {temperature}")
    q = np.asarray(q, dtype=np.float64)
    k_pos = np.asarray(k_pos, dtype=np.float64)
    if q.shape != k_pos.shape:
        raise DimensionMismatch(f"q{q.shape} vs k+{k_pos.shape}")
    logits = [float(q @ k_pos)]
    for k_neg in negatives:
        k_neg = np.asarray(k_neg, dtype=np.float64)
        if k_neg.shape != q.shape:
            raise DimensionMismatch(f"q{q.shape} vs k-{k_neg.shape}")
        logits.append(float(q @ k_neg))
    scaled = np.asarray(logits) / temperature
    peak = scaled.max()
    lse = peak + math.log(np.exp(scaled - peak).sum())
    return float(lse - scaled[0])


def combined_supervised_loss(contrastive, supervised, alpha):
    """Loss = alpha * contrastive + (1 - alpha) * supervised."""
    return alpha * contrastive + (1.0 - alpha) * supervised


def classification_loss(contrastive, category, anchor_category, alpha, coeff=0.5):
    """Loss = alpha*contrastive + (1-alpha)*category + coeff*anchor_category."""
    if float(coeff) < 0:
        raise ValueError("anchor coefficient must be >= 0")
    return alpha * contrastive + (1.0 - alpha) * category + coeff * anchor_category


# -- queue and momentum pair ----------------------------------------------------


class NegativeQueue:
    """Bounded FIFO of unit-norm key embeddings; oldest evicted first."""

    def __init__(self, capacity: int = 4096):
        if capacity < 1:
            raise ValueError("queue capacity must be >= 1")
        self.capacity = capacity
        self._rows: list[torch.Tensor] = []

    def __len__(self) -> int:
        return len(self._rows)

    def push(self, keys: torch.Tensor) -> None:
        if keys.dim() == 1:
            keys = keys.unsqueeze(0)
        for row in keys.detach():
            self._rows.append(row.clone())
        if len(self._rows) > self.capacity:
            del self._rows[: len(self._rows) - self.capacity]

    def tensor(self) -> torch.Tensor | None:
        if not self._rows:
            return None
        return torch.stack(self._rows)

    def snapshot(self) -> list[np.ndarray]:
        return [r.numpy().copy() for r in self._rows]


@dataclass
class MomentumPair:
    query: CodeEmbedder
    key: CodeEmbedder
    momentum: float = 0.999

    def __post_init__(self):
        if not 0.0 <= self.momentum <= 1.0:
            raise ValueError("momentum must be in [0, 1]")
        for p in self.key.parameters():
            p.requires_grad_(False)

    @classmethod
    def create(cls, cfg: EncoderConfig, momentum: float, seed: int) -> "MomentumPair":
        query = build_embedder(cfg, seed)
        key = build_embedder(cfg, seed)
        key.load_state_dict(query.state_dict())  # identical start
        return cls(query, key, momentum)


def momentum_update(pair: MomentumPair) -> MomentumPair:
    """theta_k <- m * theta_k + (1 - m) * theta_q, elementwise."""
    m = pair.momentum
    q_state = dict(pair.query.named_parameters())
    with torch.no_grad():
        for name, k_param in pair.key.named_parameters():
            q_param = q_state.get(name)
            if q_param is None or q_param.shape != k_param.shape:
                raise ShapeMismatch(f"parameter {name} differs between encoders")
            k_param.mul_(m).add_(q_param.detach(), alpha=1.0 - m)
    return pair


def enqueue_keys(queue: NegativeQueue, batch_keys: torch.Tensor) -> NegativeQueue:
    queue.push(batch_keys)
    return queue


# -- datasets --------------------------------------------------------------------


@dataclass(frozen=True)
class AnchorPair:
    source_id: str
    query_tokens: tuple[str, ...]
    key_tokens: tuple[str, ...]
    label: str | None = None


@dataclass(frozen=True)
class EncodedPair:
    source_id: str
    query_ids: tuple[int, ...]
    key_ids: tuple[int, ...]
    label_index: int | None = None


def build_pairs(batch: Sequence[SourceSnippet], cfg: AugmentConfig) -> list[AnchorPair]:
    """normalize -> transform -> extract both sides of each positive pair.

    Samples whose anchor degenerates to the identity are dropped with a
    warning; the trainer must not learn from trivial positives.
    """
    out: list[AnchorPair] = []
    for snippet in batch:
        normalized = normalize(snippet)
        anchor = generate_anchor(normalized, cfg)
        if anchor.is_identity:
            log.warning("dropping %s: no transform site produced a distinct anchor", snippet.id)
            continue
        lang = cfg.language
        q = extract_path(parse_text(normalized.text, lang), snippet.id, normalized=True)
        k = extract_path(parse_text(anchor.text, lang), snippet.id, normalized=True)
        out.append(AnchorPair(snippet.id, tuple(q.tokens), tuple(k.tokens), snippet.label))
    return out


def encode_pairs(pairs: Iterable[AnchorPair], vocab: Vocabulary,
                 label_map: dict[str, int] | None = None) -> list[EncodedPair]:
    out: list[EncodedPair] = []
    for p in pairs:
        label_index = None
        if label_map is not None and p.label is not None:
            label_index = label_map[p.label]
        out.append(EncodedPair(
            p.source_id,
            tuple(encode(p.query_tokens, vocab)),
            tuple(encode(p.key_tokens, vocab)),
            label_index,
        ))
    return out


def pad_batch(sequences: Sequence[Sequence[int]]) -> tuple[torch.Tensor, torch.Tensor]:
    """Right-pad with id 0 plus a mask (True marks padding)."""
    width = max(len(s) for s in sequences)
    ids = torch.zeros(len(sequences), width, dtype=torch.long)
    mask = torch.ones(len(sequences), width, dtype=torch.bool)
    for i, s in enumerate(sequences):
        ids[i, : len(s)] = torch.tensor(list(s), dtype=torch.long)
        mask[i, : len(s)] = False
    return ids, mask


# -- training ----------------------------------------------------------------------

MODES = ("unsupervised", "supervised-clone", "supervised-classify")


@dataclass(frozen=True)
class TrainConfig:
    temperature: float = 0.07
    batch_size: int = 32
    epochs: int = 10
    learning_rate: float = 1e-4
    momentum: float = 0.999
    queue_capacity: int = 4096
    alpha_init: float = 0.2
    anchor_coefficient: float = 0.5
    seed: int = 0
    mode: str = "unsupervised"
    collapse_floor: float = 1e-4

    def __post_init__(self):
        if self.temperature <= 0:
            raise NonPositiveTemperature(f"temperature {self.temperature}")
        if self.batch_size < 2:
            raise ValueError("batch_size must be >= 2")
        if not 0.0 < self.alpha_init < 1.0:
            raise ValueError("alpha_init must lie in (0, 1)")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


@dataclass
class LossBreakdown:
    contrastive: float
    total: float
    alpha_value: float
    supervised: float | None = None
    anchor: float | None = None


class Trainer:
    def __init__(self, encoder_cfg: EncoderConfig, cfg: TrainConfig,
                 n_classes: int | None = None):
        if cfg.mode != "unsupervised" and not n_classes:
            raise ValueError(f"mode {cfg.mode} needs n_classes")
        torch.manual_seed(cfg.seed)
        self.encoder_cfg = encoder_cfg
        self.cfg = cfg
        self.pair = MomentumPair.create(encoder_cfg, cfg.momentum, cfg.seed)
        self.queue = NegativeQueue(cfg.queue_capacity)
        self.alpha_raw = nn.Parameter(torch.tensor(
            math.log(cfg.alpha_init / (1.0 - cfg.alpha_init)), dtype=torch.float32
        ))
        self.classifier = nn.Linear(encoder_cfg.embedding_dim, n_classes) if n_classes else None
        if self.classifier is not None:
            init_gen = torch.Generator().manual_seed(cfg.seed + 1)
            with torch.no_grad():
                bound = 1.0 / math.sqrt(encoder_cfg.embedding_dim)
                self.classifier.weight.uniform_(-bound, bound, generator=init_gen)
                self.classifier.bias.zero_()
        params = list(self.pair.query.parameters()) + [self.alpha_raw]
        if self.classifier is not None:
            params += list(self.classifier.parameters())
        self.optimizer = torch.optim.Adam(params, lr=cfg.learning_rate)
        self.rng = random.Random(cfg.seed)
        self.step_count = 0
        self.last_query_embeddings: torch.Tensor | None = None

    @property
    def alpha(self) -> torch.Tensor:
        return torch.sigmoid(self.alpha_raw)

    def _embed(self, model: CodeEmbedder, seqs: Sequence[Sequence[int]],
               grad: bool) -> torch.Tensor:
        ids, mask = pad_batch(seqs)
        if grad:
            return model(ids, mask)
        with torch.no_grad():
            return model(ids, mask)

    def train_step(self, batch: Sequence[EncodedPair]) -> LossBreakdown:
        if len(batch) < 2:
            raise BatchTooSmall(f"contrastive step needs >= 2 samples, got {len(batch)}")
        cfg = self.cfg
        q = self._embed(self.pair.query, [b.query_ids for b in batch], grad=True)
        k = self._embed(self.pair.key, [b.key_ids for b in batch], grad=False)

        pos = (q * k).sum(dim=1, keepdim=True)
        inbatch = q @ k.t()
        off_diag_mask = ~torch.eye(len(batch), dtype=torch.bool)
        negatives = inbatch[off_diag_mask].view(len(batch), len(batch) - 1)
        queued = self.queue.tensor()
        if queued is not None:
            negatives = torch.cat([negatives, q @ queued.t()], dim=1)
        logits = torch.cat([pos, negatives], dim=1) / cfg.temperature
        target = torch.zeros(len(batch), dtype=torch.long)
        contrastive = F.cross_entropy(logits, target)

        supervised = anchor_loss = None
        alpha = self.alpha
        if cfg.mode == "unsupervised":
            total = contrastive
        else:
            labels = torch.tensor([b.label_index for b in batch], dtype=torch.long)
            category = F.cross_entropy(self.classifier(q), labels)
            if cfg.mode == "supervised-clone":
                total = combined_supervised_loss(contrastive, category, alpha)
                supervised = category
            else:
                anchor_q = self._embed(self.pair.query, [b.key_ids for b in batch], grad=True)
                anchor_ce = F.cross_entropy(self.classifier(anchor_q), labels)
                total = classification_loss(contrastive, category, anchor_ce,
                                            alpha, cfg.anchor_coefficient)
                supervised = category
                anchor_loss = anchor_ce

        self.optimizer.zero_grad()
        total.backward()
        self.optimizer.step()
        momentum_update(self.pair)
        self.queue.push(k)
        self.step_count += 1
        self.last_query_embeddings = q.detach()
        return LossBreakdown(
            contrastive=float(contrastive.detach()),
            total=float(total.detach()),
            alpha_value=float(alpha.detach()),
            supervised=None if supervised is None else float(supervised.detach()),
            anchor=None if anchor_loss is None else float(anchor_loss.detach()),
        )

    def run(self, dataset: Sequence[EncodedPair], log_path: str | Path | None = None,
            epochs: int | None = None) -> list[LossBreakdown]:
        """Full training loop with per-step JSON-lines logging and the
        anti-collapse variance monitor (active after the first epoch)."""
        history: list[LossBreakdown] = []
        n_epochs = self.cfg.epochs if epochs is None else epochs
        log_fh = open(log_path, "w", encoding="utf-8") if log_path else None
        try:
            order = list(range(len(dataset)))
            for epoch in range(n_epochs):
                self.rng.shuffle(order)
                for i in range(0, len(order), self.cfg.batch_size):
                    chunk = [dataset[j] for j in order[i:i + self.cfg.batch_size]]
                    if len(chunk) < 2:
                        continue
                    breakdown = self.train_step(chunk)
                    history.append(breakdown)
                    if log_fh is not None:
                        rec = {
                            "step": self.step_count,
                            "epoch": epoch,
                            "loss_total": breakdown.total,
                            "loss_contrastive": breakdown.contrastive,
                            "alpha": breakdown.alpha_value,
                            "queue_len": len(self.queue),
                        }
                        if breakdown.supervised is not None:
                            rec["loss_supervised"] = breakdown.supervised
                        if breakdown.anchor is not None:
                            rec["loss_anchor"] = breakdown.anchor
                        log_fh.write(json.dumps(rec, sort_keys=True) + "\n")
                if epoch >= 1:
                    self._check_collapse()
        finally:
            if log_fh is not None:
                log_fh.close()
        return history

    def _check_collapse(self) -> None:
        q = self.last_query_embeddings
        if q is None or q.shape[0] < 2:
            return
        variance = q.var(dim=0, unbiased=False)
        if float(variance.min()) < self.cfg.collapse_floor:
            warnings.warn(
                f"embedding variance {float(variance.min()):.2e} fell below "
                f"{self.cfg.collapse_floor:.0e}; representations may be collapsing",
                CollapseWarning,
                stacklevel=2,
            )

    def save(self, path: str | Path, extra: dict | None = None) -> None:
        state = dict(self.pair.query.state_dict())
        if self.classifier is not None:
            for name, tensor in self.classifier.state_dict().items():
                state[f"classifier.{name}"] = tensor
        state["alpha_raw"] = self.alpha_raw.detach()
        meta = {"mode": self.cfg.mode, "alpha": float(self.alpha)}
        if extra:
            meta.update(extra)
        save_checkpoint(path, self.encoder_cfg, state, meta)
