"""Per-dataset subword vocabulary: WordPiece-style training, greedy
longest-match encoding, character fallback, and no special tokens of
any kind. The encoder consumes raw id sequences with nothing prepended
or appended.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import EmptyCorpus, FormatVersionError, IdOutOfRange, UnknownCharacter

DEFAULT_MAX_SIZE = 20000
DEFAULT_MIN_FREQUENCY = 2
DEFAULT_MARKER = "##"

_FORMAT_NAME = "codecl-vocab"
_FORMAT_MAJOR = 1


@dataclass
class Vocabulary:
    entries: dict[str, int]
    max_size: int = DEFAULT_MAX_SIZE
    continuation_marker: str = DEFAULT_MARKER
    _by_id: list[str] = field(init=False, repr=False)

    def __post_init__(self):
        ids = sorted(self.entries.values())
        if ids != list(range(len(self.entries))):
            raise ValueError("vocabulary ids must be a dense 0-based range")
        self._by_id = [""] * len(self.entries)
        for sub, i in self.entries.items():
            self._by_id[i] = sub

    def __len__(self) -> int:
        return len(self.entries)

    def subword(self, idx: int) -> str:
        if not 0 <= idx < len(self._by_id):
            raise IdOutOfRange(f"id {idx} outside vocabulary of size {len(self._by_id)}")
        return self._by_id[idx]


def _word_symbols(token: str, marker: str) -> tuple[str, ...]:
    return tuple(ch if i == 0 else marker + ch for i, ch in enumerate(token))


def train_vocab(corpus: Iterable, max_size: int = DEFAULT_MAX_SIZE,
                min_frequency: int = DEFAULT_MIN_FREQUENCY,
                continuation_marker: str = DEFAULT_MARKER) -> Vocabulary:
    """Greedy likelihood-driven merge training.

    Pairs are scored freq(ab) / (freq(a) * freq(b)); ties break on the
    lexicographically smallest pair so training is reproducible across
    platforms. All observed characters enter the vocabulary first, which
    guarantees the character-level fallback at encode time.
    """
    word_freq: Counter[str] = Counter()
    for seq in corpus:
        tokens = seq.tokens if hasattr(seq, "tokens") else seq
        for tok in tokens:
            if tok:
                word_freq[tok] += 1
    if not word_freq:
        raise EmptyCorpus("tokenizer training needs a non-empty corpus")

    words: list[tuple[list[str], int]] = [
        [list(_word_symbols(tok, continuation_marker)), f] for tok, f in word_freq.items()
    ]
    alphabet = sorted({sym for syms, _ in words for sym in syms})
    entries: dict[str, int] = {sym: i for i, sym in enumerate(alphabet)}
    marker_len = len(continuation_marker)

    # Budget leaves the final size strictly below the configured cap.
    while len(entries) < max_size - 1:
        pair_freq: Counter[tuple[str, str]] = Counter()
        sym_freq: Counter[str] = Counter()
        for syms, f in words:
            for s in syms:
                sym_freq[s] += f
            for a, b in zip(syms, syms[1:]):
                pair_freq[(a, b)] += f
        best: tuple[str, str] | None = None
        best_key: tuple[float, str, str] | None = None
        for (a, b), f in pair_freq.items():
            if f < min_frequency:
                continue
            merged = a + b[marker_len:]
            if merged in entries:
                continue
            key = (-f / (sym_freq[a] * sym_freq[b]), a, b)
            if best_key is None or key < best_key:
                best_key = key
                best = (a, b)
        if best is None:
            break
        a, b = best
        merged = a + b[marker_len:]
        entries[merged] = len(entries)
        for syms, _ in words:
            i = 0
            while i < len(syms) - 1:
                if syms[i] == a and syms[i + 1] == b:
                    syms[i:i + 2] = [merged]
                else:
                    i += 1
    return Vocabulary(entries, max_size=max_size, continuation_marker=continuation_marker)


def encode_token(token: str, vocab: Vocabulary) -> list[int]:
    """Greedy longest-match-first segmentation of one token."""
    entries = vocab.entries
    marker = vocab.continuation_marker
    ids: list[int] = []
    i = 0
    n = len(token)
    while i < n:
        j = n
        found = None
        while j > i:
            piece = token[i:j] if i == 0 else marker + token[i:j]
            hit = entries.get(piece)
            if hit is not None:
                found = hit
                break
            j -= 1
        if found is None:
            raise UnknownCharacter(
                f"character {token[i]!r} in token {token!r} was never seen at training time"
            )
        ids.append(found)
        i = j
    return ids


def encode(tokens: Iterable[str], vocab: Vocabulary) -> list[int]:
    out: list[int] = []
    seq = tokens.tokens if hasattr(tokens, "tokens") else tokens
    for tok in seq:
        out.extend(encode_token(tok, vocab))
    return out


def decode(ids: Iterable[int], vocab: Vocabulary) -> list[str]:
    """Inverse of encode on its image: regroup subwords into tokens."""
    marker = vocab.continuation_marker
    tokens: list[str] = []
    for idx in ids:
        sub = vocab.subword(idx)
        if sub.startswith(marker) and tokens:
            tokens[-1] += sub[len(marker):]
        else:
            tokens.append(sub[len(marker):] if sub.startswith(marker) else sub)
    return tokens


# -- vocabulary file ---------------------------------------------------------


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(s: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(s):
        if s[i] == "\\" and i + 1 < len(s):
            nxt = s[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(s[i])
            i += 1
    return "".join(out)


def save_vocab(vocab: Vocabulary, path: str | Path) -> None:
    lines = [f"{_FORMAT_NAME}\tversion={_FORMAT_MAJOR}\tmarker={_escape(vocab.continuation_marker)}\tmax_size={vocab.max_size}"]
    for idx in range(len(vocab)):
        lines.append(f"{_escape(vocab.subword(idx))}\t{idx}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_vocab(path: str | Path) -> Vocabulary:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].startswith(_FORMAT_NAME + "\t"):
        raise FormatVersionError(f"{path} is not a {_FORMAT_NAME} file")
    header = dict(
        part.split("=", 1) for part in lines[0].split("\t")[1:] if "=" in part
    )
    major = int(header.get("version", "0").split(".")[0])
    if major != _FORMAT_MAJOR:
        raise FormatVersionError(f"unsupported vocabulary version {header.get('version')}")
    entries: dict[str, int] = {}
    for line in lines[1:]:
        if not line:
            continue
        sub, _, idx = line.rpartition("\t")
        entries[_unescape(sub)] = int(idx)
    return Vocabulary(
        entries,
        max_size=int(header.get("max_size", DEFAULT_MAX_SIZE)),
        continuation_marker=_unescape(header.get("marker", DEFAULT_MARKER)),
    )
