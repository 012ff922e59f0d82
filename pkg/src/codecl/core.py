"""Snippet parsing and normalization: comment removal plus canonical
variable renaming (var1, var2, ...) keyed to pre-order first occurrence.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import MalformedRecord, UnsupportedLanguage
from .syntax import Edit, SyntaxTree, apply_edits, parse_text
from .syntax.tree import FUNCTION_KINDS

# Grammar registry. Both entries are mandatory; extending to a new
# language means teaching the parser its keyword set and adding it here.
LANGUAGES = ("java", "c")

_LANGUAGE_ALIASES = {
    "java": "java",
    "c": "c",
}

_VAR_PATTERN = re.compile(r"var[1-9][0-9]*\Z")


def canonical_language(language: str) -> str:
    lang = _LANGUAGE_ALIASES.get(str(language).strip().lower())
    if lang is None:
        raise UnsupportedLanguage(f"no grammar registered for {language!r}")
    return lang


@dataclass(frozen=True)
class SourceSnippet:
    id: str
    language: str
    text: str
    label: str | None = None

    def __post_init__(self):
        canonical_language(self.language)


@dataclass(frozen=True)
class NormalizedSnippet:
    text: str
    rename_map: dict[str, str]
    source_id: str


def parse(snippet: SourceSnippet) -> SyntaxTree:
    """Parse a snippet; tolerates malformed code (see syntax.parser)."""
    return parse_text(snippet.text, canonical_language(snippet.language))


def strip_comments(snippet: SourceSnippet) -> SourceSnippet:
    tree = parse(snippet)
    text = _delete_spans(snippet.text, [tree.node(r).span for r in tree.comment_refs()])
    return SourceSnippet(snippet.id, snippet.language, text, snippet.label)


def _delete_spans(text: str, spans: list[tuple[int, int]]) -> str:
    out: list[str] = []
    cursor = 0
    for start, end in sorted(spans):
        chunk = text[cursor:start]
        # Removing a comment must never glue two word tokens together.
        if out and chunk == "" and _word_edge(out[-1], text, end):
            out.append(" ")
        out.append(chunk)
        cursor = end
        if chunk and _word_edge(chunk, text, end):
            out.append(" ")
    out.append(text[cursor:])
    return "".join(out)


def _word_edge(before: str, text: str, after_pos: int) -> bool:
    if not before or after_pos >= len(text):
        return False
    a, b = before[-1], text[after_pos]
    wordish = lambda ch: ch.isalnum() or ch in "_$"
    return wordish(a) and wordish(b)


def normalize(snippet: SourceSnippet) -> NormalizedSnippet:
    """Strip comments and rename eligible identifiers to varN.

    Eligible: parameters, local variables (including catch parameters),
    member names accessed through an eligible base, and the declared
    function name when the snippet root is a single bare function.
    Numbering follows first occurrence in pre-order. Type names, class
    names, keywords, literals and plain call names are untouched, as is
    a function named `main` (so normalized programs stay runnable).
    """
    stripped = strip_comments(snippet)
    tree = parse_text(stripped.text, canonical_language(snippet.language))
    occurrences = _eligible_occurrences(tree)

    rename_map: dict[str, str] = {}
    edits: list[Edit] = []
    for ref in occurrences:
        name = tree.node(ref).leaf_text or ""
        if name not in rename_map:
            rename_map[name] = f"var{len(rename_map) + 1}"
        edits.append(Edit(tree.node(ref).start, tree.node(ref).end, rename_map[name]))
    return NormalizedSnippet(apply_edits(stripped.text, edits), rename_map, snippet.id)


def _eligible_occurrences(tree: SyntaxTree) -> list[int]:
    parents = tree.parent_map()
    root_fn = tree.root_function()
    root_fn_name: int | None = None
    if root_fn is not None:
        name_ref = tree.node(root_fn).fields.get("name")
        if name_ref is not None and tree.node(name_ref).leaf_text != "main":
            root_fn_name = name_ref

    eligible_names: set[str] = set()
    for r in tree.walk():
        node = tree.node(r)
        if node.kind in ("formal_parameter", "variable_declarator", "catch_clause"):
            name_ref = node.fields.get("name")
            if name_ref is not None:
                eligible_names.add(tree.node(name_ref).leaf_text or "")
    if root_fn_name is not None:
        eligible_names.add(tree.node(root_fn_name).leaf_text or "")
    eligible_names.discard("")
    eligible_names.discard("main")

    out: list[int] = []
    for r in tree.walk():
        node = tree.node(r)
        if node.kind != "identifier" or not node.leaf_text:
            continue
        parent = parents.get(r)
        pnode = tree.node(parent) if parent is not None else None
        if pnode is not None:
            if pnode.kind in FUNCTION_KINDS and pnode.fields.get("name") == r:
                if r == root_fn_name:
                    out.append(r)
                continue
            if pnode.kind == "class_declaration" and pnode.fields.get("name") == r:
                continue
            if pnode.kind == "method_invocation" and pnode.fields.get("function") == r:
                continue  # plain call name
            if pnode.kind == "field_access" and pnode.fields.get("name") == r:
                if _member_access_eligible(tree, parents, parent, eligible_names):
                    out.append(r)
                continue
        if node.leaf_text in eligible_names:
            out.append(r)
    return out


def _member_access_eligible(tree: SyntaxTree, parents: dict[int, int],
                            access: int, eligible_names: set[str]) -> bool:
    """A member name is renamed only when it is a data access (not the
    callee of an invocation) rooted at an eligible variable."""
    gp = parents.get(access)
    if gp is not None:
        gpn = tree.node(gp)
        if gpn.kind == "method_invocation" and gpn.fields.get("function") == access:
            return False
    base = tree.node(access).fields.get("object")
    while base is not None and tree.node(base).kind in ("array_access", "field_access", "parenthesized_expression"):
        f = tree.node(base).fields
        base = f.get("array") or f.get("object") or f.get("expression")
    return (
        base is not None
        and tree.node(base).kind == "identifier"
        and (tree.node(base).leaf_text or "") in eligible_names
    )


def is_canonical_name(name: str) -> bool:
    return bool(_VAR_PATTERN.match(name))


# -- snippet store (JSON-lines) -------------------------------------------


def load_snippets(path: str | Path) -> list[SourceSnippet]:
    out: list[SourceSnippet] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                snippet = SourceSnippet(
                    id=str(rec["id"]),
                    language=rec["language"],
                    text=rec["code"],
                    label=rec.get("label"),
                )
            except UnsupportedLanguage:
                raise
            except Exception as exc:
                raise MalformedRecord(f"{path}:{lineno}: bad snippet record: {exc}", lineno) from exc
            if not snippet.text:
                raise MalformedRecord(f"{path}:{lineno}: empty code", lineno)
            out.append(snippet)
    return out


def save_snippets(path: str | Path, snippets: Iterable[SourceSnippet]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in snippets:
            rec = {"id": s.id, "language": s.language, "code": s.text}
            if s.label is not None:
                rec["label"] = s.label
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")


def iter_snippets(path: str | Path) -> Iterator[SourceSnippet]:
    yield from load_snippets(path)
