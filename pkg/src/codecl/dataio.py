"""Serialized artifacts: preprocessed samples, clone-pair files,
embedding dumps, metrics reports and augment audit logs. Every format
carries a version field and unknown major versions are rejected.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .augment import AugmentConfig, generate_anchor
from .core import SourceSnippet, load_snippets, normalize
from .encoder import CodeEmbedding
from .errors import DanglingPairId, FormatVersionError, MalformedRecord
from .extract import extract_path
from .metrics import MetricsReport
from .syntax import parse_text

_PRE_FORMAT = "codecl-preprocessed"
_PRE_VERSION = 1
_EMB_FORMAT = "codecl-embeddings"
_EMB_VERSION = 1


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class PreprocessedSample:
    id: str
    tokens_normalized: tuple[str, ...]
    tokens_anchor: tuple[str, ...]
    label: str | None = None


@dataclass(frozen=True)
class PairRecord:
    id1: str
    id2: str
    label: str  # clone | non-clone


@dataclass(frozen=True)
class Dataset:
    snippets: list[SourceSnippet]
    pairs: list[PairRecord]
    unique_ids: tuple[str, ...]

    @property
    def unique_count(self) -> int:
        return len(self.unique_ids)

    def by_id(self) -> dict[str, SourceSnippet]:
        return {s.id: s for s in self.snippets}


# -- ingest -------------------------------------------------------------------


def read_pairs(path: str | Path) -> list[PairRecord]:
    out: list[PairRecord] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["id1", "id2", "label"]:
            raise MalformedRecord(f"{path}:1: pair file must start with header id1,id2,label", 1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 3:
                raise MalformedRecord(f"{path}:{lineno}: expected id1,id2,label", lineno)
            label = row[2].strip()
            if label not in ("clone", "non-clone"):
                raise MalformedRecord(
                    f"{path}:{lineno}: label must be clone or non-clone, got {label!r}", lineno
                )
            out.append(PairRecord(row[0].strip(), row[1].strip(), label))
    return out


def write_pairs(path: str | Path, pairs: Iterable[PairRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id1", "id2", "label"])
        for p in pairs:
            writer.writerow([p.id1, p.id2, p.label])


def ingest(snippet_file: str | Path, pair_file: str | Path | None = None) -> Dataset:
    """Load the snippet store; with a pair file, deduplicate snippets that
    appear in several pairs so training sees unique samples."""
    snippets = load_snippets(snippet_file)
    if pair_file is None:
        ids = tuple(s.id for s in snippets)
        return Dataset(snippets, [], ids)
    pairs = read_pairs(pair_file)
    store = {s.id: s for s in snippets}
    wanted: set[str] = set()
    for p in pairs:
        for sid in (p.id1, p.id2):
            if sid not in store:
                raise DanglingPairId(f"pair references unknown snippet id {sid!r}")
            wanted.add(sid)
    unique = [s for s in snippets if s.id in wanted]
    return Dataset(unique, pairs, tuple(s.id for s in unique))


# -- preprocessing ---------------------------------------------------------------


def preprocess_snippet(snippet: SourceSnippet, cfg: AugmentConfig) -> PreprocessedSample:
    normalized = normalize(snippet)
    anchor = generate_anchor(normalized, cfg)
    q = extract_path(parse_text(normalized.text, cfg.language), snippet.id, normalized=True)
    k = extract_path(parse_text(anchor.text, cfg.language), snippet.id, normalized=True)
    return PreprocessedSample(snippet.id, tuple(q.tokens), tuple(k.tokens), snippet.label)


def _preprocess_worker(args: tuple[SourceSnippet, AugmentConfig]):
    snippet, cfg = args
    try:
        return preprocess_snippet(snippet, cfg), None
    except Exception as exc:  # per-sample failures must not kill the run
        return None, (snippet.id, f"{type(exc).__name__}: {exc}")


def preprocess(snippets: Sequence[SourceSnippet], cfg: AugmentConfig,
               workers: int = 1) -> tuple[list[PreprocessedSample], list[tuple[str, str]]]:
    """Normalize + transform + extract each snippet. Output order follows
    input order regardless of worker count, so files are reproducible."""
    samples: list[PreprocessedSample] = []
    failures: list[tuple[str, str]] = []
    jobs = [(s, cfg) for s in snippets]
    if workers <= 1:
        results = map(_preprocess_worker, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            results = list(pool.map(_preprocess_worker, jobs, chunksize=8))
        finally:
            pool.shutdown()
    for sample, failure in results:
        if failure is not None:
            failures.append(failure)
        else:
            samples.append(sample)
    return samples, failures


def write_preprocessed(path: str | Path, samples: Iterable[PreprocessedSample]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dumps({"format": _PRE_FORMAT, "version": _PRE_VERSION}) + "\n")
        for s in samples:
            rec = {
                "id": s.id,
                "tokens_normalized": list(s.tokens_normalized),
                "tokens_anchor": list(s.tokens_anchor),
            }
            if s.label is not None:
                rec["label"] = s.label
            fh.write(_dumps(rec) + "\n")


def read_preprocessed(path: str | Path) -> list[PreprocessedSample]:
    out: list[PreprocessedSample] = []
    with open(path, encoding="utf-8") as fh:
        header_line = fh.readline()
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise FormatVersionError(f"{path}: missing preprocessed header") from exc
        if header.get("format") != _PRE_FORMAT:
            raise FormatVersionError(f"{path}: not a {_PRE_FORMAT} file")
        if int(header.get("version", 0)) != _PRE_VERSION:
            raise FormatVersionError(f"{path}: unsupported version {header.get('version')}")
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                out.append(PreprocessedSample(
                    id=str(rec["id"]),
                    tokens_normalized=tuple(rec["tokens_normalized"]),
                    tokens_anchor=tuple(rec["tokens_anchor"]),
                    label=rec.get("label"),
                ))
            except Exception as exc:
                raise MalformedRecord(f"{path}:{lineno}: bad record: {exc}", lineno) from exc
    return out


# -- embeddings -------------------------------------------------------------------


def write_embeddings(path: str | Path, embeddings: Iterable[CodeEmbedding]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dumps({"format": _EMB_FORMAT, "version": _EMB_VERSION}) + "\n")
        for e in embeddings:
            fh.write(_dumps({"id": e.source_id,
                             "embedding": [float(x) for x in e.vector]}) + "\n")


def read_embeddings(path: str | Path) -> list[CodeEmbedding]:
    out: list[CodeEmbedding] = []
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("format") != _EMB_FORMAT or int(header.get("version", 0)) != _EMB_VERSION:
            raise FormatVersionError(f"{path}: not a supported {_EMB_FORMAT} file")
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            out.append(CodeEmbedding(np.asarray(rec["embedding"], dtype=np.float32),
                                     str(rec["id"])))
    return out


# -- reports -----------------------------------------------------------------------


def write_metrics(path: str | Path, report: MetricsReport, threshold: float | None = None) -> None:
    payload = {"format": "codecl-metrics", "version": 1}
    payload.update(report.to_dict())
    if threshold is not None:
        payload["threshold"] = threshold
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_decisions(path: str | Path, rows: Iterable[tuple[str, str, float, str, str]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id1", "id2", "sim", "decision", "label"])
        for id1, id2, sim, decision, label in rows:
            writer.writerow([id1, id2, f"{sim:.6f}", decision, label])


def write_augment_report(path: str | Path, anchors) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dumps({"format": "codecl-augment-report", "version": 1}) + "\n")
        for a in anchors:
            fh.write(_dumps({
                "parent_id": a.parent_id,
                "applied": [{"kind": k.value, "span": list(span)} for k, span in a.applied],
                "text": a.text,
            }) + "\n")
