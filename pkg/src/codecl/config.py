"""Run configuration: a YAML tree of per-stage settings with CLI flags
taking precedence over file values."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .augment import AugmentConfig, TransformKind
from .encoder import EncoderConfig
from .errors import UsageError
from .metrics import CloneEvalConfig
from .trainer import MODES, TrainConfig

_DEFAULTS: dict = {
    "mode": "unsupervised",
    "seed": 0,
    "workers": 1,
    "language": "java",
    "augment": {
        "site_probability": 0.1,
        "per_kind_probability": {},
        "enabled": [k.value for k in TransformKind],
    },
    "tokenizer": {
        "max_size": 20000,
        "min_frequency": 2,
        "continuation_marker": "##",
    },
    "encoder": {
        "d_model": 64,
        "n_layers": 2,
        "n_heads": 4,
        "ffn_dim": None,
        "max_relative_distance": 32,
        "mlp_dims": None,
        "max_sequence_length": 512,
        "use_relative_values": True,
    },
    "train": {
        "temperature": 0.07,
        "batch_size": 32,
        "epochs": 10,
        "learning_rate": 1.0e-4,
        "momentum": 0.999,
        "queue_capacity": 4096,
        "alpha_init": 0.2,
        "anchor_coefficient": 0.5,
        "collapse_floor": 1.0e-4,
    },
    "clone": {"threshold": 0.75},
}


def _merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        elif value is not None:
            out[key] = value
    return out


@dataclass
class RunConfig:
    raw: dict = field(default_factory=lambda: dict(_DEFAULTS))

    @classmethod
    def load(cls, path: str | Path | None = None, overrides: dict | None = None) -> "RunConfig":
        tree = dict(_DEFAULTS)
        if path is not None:
            loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
            if not isinstance(loaded, dict):
                raise UsageError(f"config file {path} must hold a mapping")
            tree = _merge(tree, loaded)
        if overrides:
            tree = _merge(tree, overrides)
        cfg = cls(tree)
        if cfg.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {cfg.mode!r}")
        return cfg

    @property
    def mode(self) -> str:
        return self.raw["mode"]

    @property
    def seed(self) -> int:
        return int(self.raw["seed"])

    @property
    def workers(self) -> int:
        return int(self.raw["workers"])

    @property
    def language(self) -> str:
        return self.raw["language"]

    def augment_config(self) -> AugmentConfig:
        a = self.raw["augment"]
        enabled = frozenset(TransformKind(name) for name in a["enabled"])
        per_kind = {TransformKind(k): float(v) for k, v in a["per_kind_probability"].items()}
        return AugmentConfig(
            language=self.language,
            enabled=enabled,
            per_kind_probability=per_kind,
            site_probability=float(a["site_probability"]),
            rng_seed=self.seed,
        )

    def tokenizer_config(self) -> dict:
        t = self.raw["tokenizer"]
        return {
            "max_size": int(t["max_size"]),
            "min_frequency": int(t["min_frequency"]),
            "continuation_marker": str(t["continuation_marker"]),
        }

    def encoder_config(self, vocab_size: int) -> EncoderConfig:
        e = self.raw["encoder"]
        return EncoderConfig(
            vocab_size=vocab_size,
            d_model=int(e["d_model"]),
            n_layers=int(e["n_layers"]),
            n_heads=int(e["n_heads"]),
            ffn_dim=None if e["ffn_dim"] is None else int(e["ffn_dim"]),
            max_relative_distance=int(e["max_relative_distance"]),
            mlp_dims=None if e["mlp_dims"] is None else tuple(int(d) for d in e["mlp_dims"]),
            max_sequence_length=int(e["max_sequence_length"]),
            use_relative_values=bool(e["use_relative_values"]),
        )

    def train_config(self) -> TrainConfig:
        t = self.raw["train"]
        return TrainConfig(
            temperature=float(t["temperature"]),
            batch_size=int(t["batch_size"]),
            epochs=int(t["epochs"]),
            learning_rate=float(t["learning_rate"]),
            momentum=float(t["momentum"]),
            queue_capacity=int(t["queue_capacity"]),
            alpha_init=float(t["alpha_init"]),
            anchor_coefficient=float(t["anchor_coefficient"]),
            seed=self.seed,
            mode=self.mode,
            collapse_floor=float(t["collapse_floor"]),
        )

    def clone_config(self) -> CloneEvalConfig:
        return CloneEvalConfig(threshold=float(self.raw["clone"]["threshold"]))
