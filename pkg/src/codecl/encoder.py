"""Relative-position Transformer encoder with an MLP projection head.

Attention logits follow e_ij = (x_i W^Q (x_j W^K)^T
+ x_i W^Q (a^K_{clip(j-i,k)})^T) / sqrt(d_z), with learned tables for
clipped offsets on the key side and (optionally) the value side.
Sublayers are post-norm: out = LayerNorm(x + sublayer(x)). A snippet
embedding is the mean over real positions, projected by the head and
L2-normalized. No class token, no sentinels: the id sequence is
consumed as-is.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import torch
import torch.nn.functional as F
from torch import nn

from .errors import (
    EmptySequence,
    FormatVersionError,
    IdOutOfRange,
    SequenceTooLong,
)

_CKPT_MAGIC = b"CCLCHKP1"
_CKPT_VERSION = 1


@dataclass(frozen=True)
class EncoderConfig:
    vocab_size: int
    d_model: int = 64
    n_layers: int = 2
    n_heads: int = 4
    ffn_dim: int | None = None
    max_relative_distance: int = 32
    mlp_dims: tuple[int, ...] | None = None
    max_sequence_length: int = 512
    use_relative_values: bool = True

    def __post_init__(self):
        if self.vocab_size < 1 or self.n_layers < 1 or self.max_relative_distance < 1:
            raise ValueError("vocab_size, n_layers and max_relative_distance must be >= 1")
        if self.d_model % self.n_heads != 0:
            raise ValueError("d_model must be divisible by n_heads")
        if self.mlp_dims is not None and len(self.mlp_dims) < 1:
            raise ValueError("mlp head needs at least one layer")

    @property
    def d_head(self) -> int:
        return self.d_model // self.n_heads

    @property
    def ffn_width(self) -> int:
        return self.ffn_dim if self.ffn_dim is not None else 4 * self.d_model

    @property
    def head_dims(self) -> tuple[int, ...]:
        return tuple(self.mlp_dims) if self.mlp_dims is not None else (self.d_model, 256)

    @property
    def embedding_dim(self) -> int:
        return self.head_dims[-1]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mlp_dims"] = list(self.head_dims)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EncoderConfig":
        clean = dict(d)
        if clean.get("mlp_dims") is not None:
            clean["mlp_dims"] = tuple(clean["mlp_dims"])
        return cls(**clean)


class RelativeSelfAttention(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.n_heads = cfg.n_heads
        self.d_head = cfg.d_head
        self.k = cfg.max_relative_distance
        self.w_query = nn.Linear(cfg.d_model, cfg.d_model, bias=False)
        self.w_key = nn.Linear(cfg.d_model, cfg.d_model, bias=False)
        self.w_value = nn.Linear(cfg.d_model, cfg.d_model, bias=False)
        self.w_output = nn.Linear(cfg.d_model, cfg.d_model, bias=False)
        self.rel_keys = nn.Parameter(torch.zeros(2 * self.k + 1, self.d_head))
        if cfg.use_relative_values:
            self.rel_values = nn.Parameter(torch.zeros(2 * self.k + 1, self.d_head))
        else:
            self.rel_values = None

    def _split(self, x: torch.Tensor) -> torch.Tensor:
        b, l, _ = x.shape
        return x.view(b, l, self.n_heads, self.d_head).transpose(1, 2)

    def _offsets(self, length: int, device) -> torch.Tensor:
        pos = torch.arange(length, device=device)
        rel = pos.unsqueeze(0) - pos.unsqueeze(1)  # rel[i, j] = j - i
        return rel.clamp(-self.k, self.k) + self.k

    def logits(self, x: torch.Tensor) -> torch.Tensor:
        """Pre-softmax attention logits, shape (batch, heads, L, L)."""
        q = self._split(self.w_query(x))
        key = self._split(self.w_key(x))
        content = torch.matmul(q, key.transpose(-1, -2))
        idx = self._offsets(x.shape[1], x.device)
        q_rel = torch.matmul(q, self.rel_keys.to(q.dtype).transpose(0, 1))  # (B,H,L,2k+1)
        rel = torch.gather(q_rel, 3, idx.expand(q.shape[0], self.n_heads, -1, -1))
        return (content + rel) / math.sqrt(self.d_head)

    def forward(self, x: torch.Tensor, padding_mask: torch.Tensor | None = None) -> torch.Tensor:
        scores = self.logits(x)
        if padding_mask is not None:
            scores = scores.masked_fill(padding_mask[:, None, None, :], float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        attn = torch.nan_to_num(attn)  # fully masked query rows (padding)
        value = self._split(self.w_value(x))
        ctx = torch.matmul(attn, value)
        if self.rel_values is not None:
            idx = self._offsets(x.shape[1], x.device)
            rel_v = self.rel_values.to(x.dtype)[idx]  # (L, L, d_head)
            ctx = ctx + torch.einsum("bhij,ijd->bhid", attn, rel_v)
        b, _, l, _ = ctx.shape
        merged = ctx.transpose(1, 2).reshape(b, l, self.n_heads * self.d_head)
        return self.w_output(merged)


class EncoderLayer(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.attention = RelativeSelfAttention(cfg)
        self.ffn = nn.Sequential(
            nn.Linear(cfg.d_model, cfg.ffn_width),
            nn.ReLU(),
            nn.Linear(cfg.ffn_width, cfg.d_model),
        )
        self.norm1 = nn.LayerNorm(cfg.d_model)
        self.norm2 = nn.LayerNorm(cfg.d_model)

    def forward(self, x: torch.Tensor, padding_mask: torch.Tensor | None = None) -> torch.Tensor:
        x = self.norm1(x + self.attention(x, padding_mask))
        x = self.norm2(x + self.ffn(x))
        return x


class CodeEncoder(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.cfg = cfg
        self.embedding = nn.Embedding(cfg.vocab_size, cfg.d_model)
        self.layers = nn.ModuleList(EncoderLayer(cfg) for _ in range(cfg.n_layers))

    def forward(self, ids: torch.Tensor, padding_mask: torch.Tensor | None = None) -> torch.Tensor:
        if ids.dim() == 1:
            ids = ids.unsqueeze(0)
        if ids.shape[1] > self.cfg.max_sequence_length:
            raise SequenceTooLong(
                f"sequence length {ids.shape[1]} exceeds limit {self.cfg.max_sequence_length}"
            )
        if ids.numel() and (int(ids.min()) < 0 or int(ids.max()) >= self.cfg.vocab_size):
            raise IdOutOfRange("token id outside vocabulary")
        x = self.embedding(ids)
        for layer in self.layers:
            x = layer(x, padding_mask)
        return x


class ProjectionHead(nn.Module):
    """h_i = relu(W_i h_{i-1} + b_i) for i < M; z = W_M h_{M-1} + b_M."""

    def __init__(self, in_dim: int, dims: tuple[int, ...]):
        super().__init__()
        layers: list[nn.Module] = []
        prev = in_dim
        for i, dim in enumerate(dims):
            layers.append(nn.Linear(prev, dim))
            if i < len(dims) - 1:
                layers.append(nn.ReLU())
            prev = dim
        self.net = nn.Sequential(*layers)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.net(x)


class CodeEmbedder(nn.Module):
    """Encoder + head; maps id sequences to unit-norm embeddings."""

    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.cfg = cfg
        self.encoder = CodeEncoder(cfg)
        self.head = ProjectionHead(cfg.d_model, cfg.head_dims)

    def forward(self, ids: torch.Tensor, padding_mask: torch.Tensor | None = None) -> torch.Tensor:
        hidden = self.encoder(ids, padding_mask)
        if padding_mask is None:
            pooled = hidden.mean(dim=1)
        else:
            keep = (~padding_mask).to(hidden.dtype).unsqueeze(-1)
            denom = keep.sum(dim=1).clamp(min=1.0)
            pooled = (hidden * keep).sum(dim=1) / denom
        z = self.head(pooled)
        return F.normalize(z, dim=-1)


def rel_attention_logits(x: torch.Tensor, layer: RelativeSelfAttention) -> torch.Tensor:
    """Eq-style logits for token representations x of shape (L, d_model)."""
    if x.dim() == 2:
        return layer.logits(x.unsqueeze(0)).squeeze(0)
    return layer.logits(x)


@dataclass(frozen=True)
class CodeEmbedding:
    vector: np.ndarray
    source_id: str = ""


def init_parameters(model: nn.Module, seed: int) -> None:
    """Scaled-uniform (fan-in) init for every tensor, fixed seed."""
    gen = torch.Generator().manual_seed(seed)
    for name, p in sorted(model.named_parameters(), key=lambda kv: kv[0]):
        with torch.no_grad():
            if "norm" in name:
                if name.endswith("bias"):
                    p.zero_()
                else:
                    p.fill_(1.0)
            elif p.dim() >= 2:
                bound = 1.0 / math.sqrt(p.shape[-1])
                p.uniform_(-bound, bound, generator=gen)
            elif name.endswith("bias"):
                p.zero_()
            else:
                bound = 1.0 / math.sqrt(max(p.numel(), 1))
                p.uniform_(-bound, bound, generator=gen)


def build_embedder(cfg: EncoderConfig, seed: int = 0) -> CodeEmbedder:
    model = CodeEmbedder(cfg)
    init_parameters(model, seed)
    return model


def embed_snippet(ids, model: CodeEmbedder, source_id: str = "") -> CodeEmbedding:
    """Deterministic inference embedding of one id sequence."""
    seq = list(ids)
    if not seq:
        raise EmptySequence(f"cannot embed an empty sequence for {source_id!r}")
    was_training = model.training
    model.eval()
    try:
        with torch.no_grad():
            z = model(torch.tensor(seq, dtype=torch.long).unsqueeze(0))
    finally:
        model.train(was_training)
    return CodeEmbedding(z.squeeze(0).cpu().numpy().astype(np.float32), source_id)


# -- checkpoint container -----------------------------------------------------


def save_checkpoint(path: str | Path, cfg: EncoderConfig,
                    state: dict[str, torch.Tensor],
                    extra: dict | None = None) -> None:
    """Versioned binary container: config block plus named float32
    tensors (row-major, little-endian). Reload is bit-exact."""
    tensors = []
    blobs = []
    for name, tensor in state.items():
        arr = tensor.detach().cpu().to(torch.float32).numpy()
        arr = np.ascontiguousarray(arr, dtype="<f4")
        tensors.append({"name": name, "shape": list(arr.shape), "dtype": "float32"})
        blobs.append(arr.tobytes())
    header = {
        "format": "codecl-checkpoint",
        "version": _CKPT_VERSION,
        "config": cfg.to_dict(),
        "extra": extra or {},
        "tensors": tensors,
    }
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_CKPT_MAGIC)
        fh.write(struct.pack("<Q", len(header_bytes)))
        fh.write(header_bytes)
        for blob in blobs:
            fh.write(blob)


def load_checkpoint(path: str | Path) -> tuple[EncoderConfig, dict[str, torch.Tensor], dict]:
    with open(path, "rb") as fh:
        magic = fh.read(len(_CKPT_MAGIC))
        if magic != _CKPT_MAGIC:
            raise FormatVersionError(f"{path} is not a codecl checkpoint")
        (header_len,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(header_len).decode("utf-8"))
        if header.get("version") != _CKPT_VERSION:
            raise FormatVersionError(f"unsupported checkpoint version {header.get('version')}")
        state: dict[str, torch.Tensor] = {}
        for spec in header["tensors"]:
            count = int(np.prod(spec["shape"])) if spec["shape"] else 1
            raw = fh.read(count * 4)
            arr = np.frombuffer(raw, dtype="<f4").reshape(spec["shape"]).copy()
            state[spec["name"]] = torch.from_numpy(arr)
    cfg = EncoderConfig.from_dict(header["config"])
    return cfg, state, header.get("extra", {})


def load_embedder(path: str | Path) -> tuple[CodeEmbedder, dict]:
    cfg, state, extra = load_checkpoint(path)
    model = CodeEmbedder(cfg)
    model.load_state_dict(state)
    model.eval()
    return model, extra
