"""Command-line surface tying the pipeline together.

Subcommands: preprocess | train-tokenizer | train | embed | eval-clone |
train-classify | score-names | report. Every command accepts --config
(YAML), --seed and --out; flags override config file values. Failures
print a machine-readable JSON error to stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import dataio
from .config import RunConfig
from .core import SourceSnippet, load_snippets, normalize
from .encoder import embed_snippet, load_embedder
from .errors import CodeclError, UsageError
from .extract import extract_path
from .metrics import (
    CloneEvalConfig,
    ConfusionCounts,
    classify_pair,
    compute_metrics,
    cosine_similarity,
    subword_f1,
)
from .syntax import parse_text
from .tokenizer import encode, load_vocab, save_vocab, train_vocab
from .trainer import Trainer, encode_pairs, AnchorPair


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codecl",
        description="Contrastive code embeddings from transformed syntax trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--config", help="YAML run configuration")
        p.add_argument("--seed", type=int, help="global seed (overrides config)")
        p.add_argument("--out", help="output file or directory")
        return p

    p = common(sub.add_parser("preprocess", help="normalize, transform and extract a snippet store"))
    p.add_argument("--snippets", required=True)
    p.add_argument("--pairs", help="optional pair CSV used to deduplicate training samples")
    p.add_argument("--language", help="grammar to use (overrides config)")
    p.add_argument("--workers", type=int, help="parallel workers")
    p.add_argument("--report", dest="augment_report", help="write an augment audit JSONL here")

    p = common(sub.add_parser("train-tokenizer", help="train the subword vocabulary"))
    p.add_argument("--preprocessed", required=True)
    p.add_argument("--max-size", type=int)
    p.add_argument("--min-frequency", type=int)

    p = common(sub.add_parser("train", help="contrastive training (unsupervised or supervised-clone)"))
    p.add_argument("--preprocessed", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--mode", choices=["unsupervised", "supervised-clone"])
    p.add_argument("--epochs", type=int)

    p = common(sub.add_parser("train-classify", help="supervised classification training"))
    p.add_argument("--preprocessed", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--epochs", type=int)

    p = common(sub.add_parser("embed", help="embed snippets with a trained checkpoint"))
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--snippets", required=True)

    p = common(sub.add_parser("eval-clone", help="threshold clone decisions over labeled pairs"))
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--snippets", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--threshold", type=float)
    p.add_argument("--decisions", help="optional per-pair decision CSV")

    p = common(sub.add_parser("score-names", help="subword-F1 scoring of predicted method names"))
    p.add_argument("--input", required=True, help="CSV with header predicted,truth")

    p = common(sub.add_parser("report", help="pretty-print a metrics JSON file"))
    p.add_argument("--metrics", required=True)

    return parser


def _run_config(args) -> RunConfig:
    overrides: dict = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "language", None) is not None:
        overrides["language"] = args.language
    if getattr(args, "workers", None) is not None:
        overrides["workers"] = args.workers
    if getattr(args, "mode", None) is not None:
        overrides["mode"] = args.mode
    if getattr(args, "epochs", None) is not None:
        overrides.setdefault("train", {})["epochs"] = args.epochs
    if getattr(args, "threshold", None) is not None:
        overrides.setdefault("clone", {})["threshold"] = args.threshold
    if getattr(args, "max_size", None) is not None:
        overrides.setdefault("tokenizer", {})["max_size"] = args.max_size
    if getattr(args, "min_frequency", None) is not None:
        overrides.setdefault("tokenizer", {})["min_frequency"] = args.min_frequency
    return RunConfig.load(args.config, overrides)


def _require_out(args, default_name: str | None = None) -> Path:
    if args.out:
        return Path(args.out)
    if default_name:
        return Path(default_name)
    raise UsageError("--out is required for this command")


def _snippet_embedding(model, vocab, snippet: SourceSnippet, language: str):
    normalized = normalize(snippet)
    seq = extract_path(parse_text(normalized.text, language), snippet.id, normalized=True)
    ids = encode(seq, vocab)
    return embed_snippet(ids, model, source_id=snippet.id)


# -- commands -------------------------------------------------------------------


def _cmd_preprocess(args) -> int:
    cfg = _run_config(args)
    out = _require_out(args)
    dataset = dataio.ingest(args.snippets, args.pairs)
    if args.pairs:
        print(f"unique training samples after pair deduplication: {dataset.unique_count}")
    aug = cfg.augment_config()
    samples, failures = dataio.preprocess(dataset.snippets, aug, workers=cfg.workers)
    dataio.write_preprocessed(out, samples)
    if args.augment_report:
        from .augment import generate_anchor

        anchors = [generate_anchor(normalize(s), aug) for s in dataset.snippets]
        dataio.write_augment_report(args.augment_report, anchors)
    print(f"preprocessed {len(samples)} snippets -> {out}")
    for sid, err in failures:
        print(f"failed {sid}: {err}", file=sys.stderr)
    return 0


def _cmd_train_tokenizer(args) -> int:
    cfg = _run_config(args)
    out = _require_out(args)
    samples = dataio.read_preprocessed(args.preprocessed)
    tok_cfg = cfg.tokenizer_config()
    corpus = [s.tokens_normalized for s in samples] + [s.tokens_anchor for s in samples]
    vocab = train_vocab(corpus, **tok_cfg)
    save_vocab(vocab, out)
    print(f"trained vocabulary of {len(vocab)} subwords -> {out}")
    return 0


def _pairs_from_preprocessed(samples) -> list[AnchorPair]:
    pairs = []
    skipped = 0
    for s in samples:
        if s.tokens_normalized == s.tokens_anchor:
            skipped += 1
            continue
        pairs.append(AnchorPair(s.id, s.tokens_normalized, s.tokens_anchor, s.label))
    if skipped:
        print(f"dropped {skipped} identity anchors", file=sys.stderr)
    return pairs


def _train_common(args, mode: str | None = None) -> int:
    cfg = _run_config(args)
    if mode is not None:
        cfg.raw["mode"] = mode
    out_dir = _require_out(args)
    out_dir.mkdir(parents=True, exist_ok=True)
    samples = dataio.read_preprocessed(args.preprocessed)
    vocab = load_vocab(args.vocab)
    pairs = _pairs_from_preprocessed(samples)
    if not pairs:
        raise UsageError("no usable training pairs after dropping identity anchors")

    label_map = None
    n_classes = None
    if cfg.mode != "unsupervised":
        labels = sorted({p.label for p in pairs if p.label is not None})
        if not labels:
            raise UsageError(f"mode {cfg.mode} needs labeled snippets")
        label_map = {lab: i for i, lab in enumerate(labels)}
        n_classes = len(labels)
        pairs = [p for p in pairs if p.label is not None]

    dataset = encode_pairs(pairs, vocab, label_map)
    encoder_cfg = cfg.encoder_config(vocab_size=len(vocab))
    trainer = Trainer(encoder_cfg, cfg.train_config(), n_classes=n_classes)
    history = trainer.run(dataset, log_path=out_dir / "train_log.jsonl")
    extra = {"vocab_size": len(vocab)}
    if label_map is not None:
        extra["labels"] = sorted(label_map, key=label_map.get)
    trainer.save(out_dir / "checkpoint.bin", extra)
    final = history[-1] if history else None
    if final is not None:
        print(f"trained {len(history)} steps; final loss {final.total:.4f} "
              f"(contrastive {final.contrastive:.4f}, alpha {final.alpha_value:.3f})")
    print(f"checkpoint -> {out_dir / 'checkpoint.bin'}")
    return 0


def _cmd_train(args) -> int:
    return _train_common(args)


def _cmd_train_classify(args) -> int:
    return _train_common(args, mode="supervised-classify")


def _cmd_embed(args) -> int:
    cfg = _run_config(args)
    out = _require_out(args)
    model, _ = load_embedder(args.checkpoint)
    vocab = load_vocab(args.vocab)
    snippets = load_snippets(args.snippets)
    embeddings = []
    for s in snippets:
        try:
            embeddings.append(_snippet_embedding(model, vocab, s, s.language))
        except CodeclError as exc:
            print(f"failed {s.id}: {exc}", file=sys.stderr)
    dataio.write_embeddings(out, embeddings)
    print(f"embedded {len(embeddings)} snippets -> {out}")
    return 0


def _cmd_eval_clone(args) -> int:
    cfg = _run_config(args)
    out = _require_out(args)
    clone_cfg = cfg.clone_config()
    model, _ = load_embedder(args.checkpoint)
    vocab = load_vocab(args.vocab)
    dataset = dataio.ingest(args.snippets, args.pairs)
    store = dataset.by_id()
    cache = {}
    for sid in dataset.unique_ids:
        s = store[sid]
        cache[sid] = _snippet_embedding(model, vocab, s, s.language)
    counts = ConfusionCounts()
    rows = []
    for pair in dataset.pairs:
        sim = cosine_similarity(cache[pair.id1], cache[pair.id2])
        decision = sim >= clone_cfg.threshold
        counts = counts.add(decision, pair.label == "clone")
        rows.append((pair.id1, pair.id2, sim,
                     "clone" if decision else "non-clone", pair.label))
    report = compute_metrics(counts)
    dataio.write_metrics(out, report, threshold=clone_cfg.threshold)
    if args.decisions:
        dataio.write_decisions(args.decisions, rows)
    print(f"pairs={counts.total} accuracy={report.accuracy:.4f} f1={report.f1:.4f} -> {out}")
    return 0


def _cmd_score_names(args) -> int:
    out = _require_out(args)
    rows = []
    with open(args.input, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["predicted", "truth"]:
            raise UsageError("score-names input must start with header predicted,truth")
        for row in reader:
            if len(row) >= 2:
                rows.append((row[0].strip(), row[1].strip()))
    if not rows:
        raise UsageError("no rows to score")
    scored = []
    for predicted, truth in rows:
        p, r, f1 = subword_f1(predicted, truth)
        scored.append({"predicted": predicted, "truth": truth,
                       "precision": p, "recall": r, "f1": f1})
    mean = lambda key: sum(s[key] for s in scored) / len(scored)
    payload = {
        "format": "codecl-name-scores",
        "version": 1,
        "rows": scored,
        "mean_precision": mean("precision"),
        "mean_recall": mean("recall"),
        "mean_f1": mean("f1"),
    }
    Path(out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"scored {len(scored)} names; mean F1 {payload['mean_f1']:.4f} -> {out}")
    return 0


def _cmd_report(args) -> int:
    payload = json.loads(Path(args.metrics).read_text(encoding="utf-8"))
    width = max(len(k) for k in payload)
    for key in ("accuracy", "precision", "recall", "f1", "threshold"):
        if key in payload:
            print(f"{key:<{width}}  {payload[key]:.4f}")
    if "counts" in payload:
        c = payload["counts"]
        print(f"{'counts':<{width}}  tp={c['tp']} tn={c['tn']} fp={c['fp']} fn={c['fn']}")
    if payload.get("degenerate"):
        print("warning: degenerate metric (division by zero reported as 0)")
    return 0


_COMMANDS = {
    "preprocess": _cmd_preprocess,
    "train-tokenizer": _cmd_train_tokenizer,
    "train": _cmd_train,
    "train-classify": _cmd_train_classify,
    "embed": _cmd_embed,
    "eval-clone": _cmd_eval_clone,
    "score-names": _cmd_score_names,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(json.dumps({"error": "UsageError", "message": str(exc)}), file=sys.stderr)
        return 2
    except CodeclError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
