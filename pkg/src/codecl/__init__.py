"""codecl: contrastive code embeddings from normalized, transformed syntax trees."""

__version__ = "0.1.0"

from .augment import (
    AnchorSnippet,
    AugmentConfig,
    TransformKind,
    generate_anchor,
)
from .core import (
    NormalizedSnippet,
    SourceSnippet,
    normalize,
    parse,
    strip_comments,
)
from .encoder import (
    CodeEmbedder,
    CodeEmbedding,
    EncoderConfig,
    build_embedder,
    embed_snippet,
    load_checkpoint,
    load_embedder,
    save_checkpoint,
)
from .extract import TokenSequence, extract_path
from .metrics import (
    CloneEvalConfig,
    ConfusionCounts,
    MetricsReport,
    classify_pair,
    classify_snippet,
    compute_metrics,
    cosine_similarity,
    subword_f1,
    subword_split,
)
from .tokenizer import Vocabulary, decode, encode, load_vocab, save_vocab, train_vocab
from .trainer import (
    AnchorPair,
    LossBreakdown,
    MomentumPair,
    NegativeQueue,
    TrainConfig,
    Trainer,
    build_pairs,
    classification_loss,
    combined_supervised_loss,
    enqueue_keys,
    info_nce,
    momentum_update,
)

__all__ = [
    "__version__",
    "AnchorPair",
    "AnchorSnippet",
    "AugmentConfig",
    "CloneEvalConfig",
    "CodeEmbedder",
    "CodeEmbedding",
    "ConfusionCounts",
    "EncoderConfig",
    "LossBreakdown",
    "MetricsReport",
    "MomentumPair",
    "NegativeQueue",
    "NormalizedSnippet",
    "SourceSnippet",
    "TokenSequence",
    "TrainConfig",
    "Trainer",
    "TransformKind",
    "Vocabulary",
    "build_embedder",
    "build_pairs",
    "classification_loss",
    "classify_pair",
    "classify_snippet",
    "combined_supervised_loss",
    "compute_metrics",
    "cosine_similarity",
    "decode",
    "embed_snippet",
    "encode",
    "enqueue_keys",
    "extract_path",
    "generate_anchor",
    "info_nce",
    "load_checkpoint",
    "load_embedder",
    "load_vocab",
    "momentum_update",
    "normalize",
    "parse",
    "save_checkpoint",
    "save_vocab",
    "strip_comments",
    "subword_f1",
    "subword_split",
    "train_vocab",
]
