"""Span-based text surgery: all rewrites are lists of non-overlapping edits."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Edit:
    start: int
    end: int
    replacement: str

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def apply_edits(text: str, edits: list[Edit]) -> str:
    """Apply edits in one pass. Edits must not overlap; pure insertions
    (start == end) may share a boundary with a neighboring edit."""
    ordered = sorted(edits, key=lambda e: (e.start, e.end))
    out: list[str] = []
    cursor = 0
    for e in ordered:
        if e.start < cursor:
            raise ValueError(f"overlapping edits at {e.start}")
        out.append(text[cursor:e.start])
        out.append(e.replacement)
        cursor = e.end
    out.append(text[cursor:])
    return "".join(out)
