"""Arena-based syntax tree shared by both supported grammars.

Nodes live in a flat list; children are indices into it. Spans are
offsets into the snippet text, with children contained in their parent
and non-overlapping in source order. Keyword, operator and punctuation
leaves use their literal text as the node kind (tree-sitter style), so
pruning tables can be written purely in terms of kinds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

NodeRef = int

# Kinds that behave as a function/method definition in either language.
FUNCTION_KINDS = {"method_declaration", "function_definition"}

STATEMENT_KINDS = {
    "block",
    "local_variable_declaration",
    "expression_statement",
    "if_statement",
    "while_statement",
    "do_statement",
    "for_statement",
    "return_statement",
    "break_statement",
    "continue_statement",
    "try_statement",
    "throw_statement",
    "empty_statement",
}

COMMENT_KINDS = {"line_comment", "block_comment"}

# Top-level nodes that are neither code nor comments.
HEADER_KINDS = {"preproc", "import_declaration", "package_declaration"}


@dataclass
class Node:
    kind: str
    start: int
    end: int
    children: list[NodeRef] = field(default_factory=list)
    leaf_text: str | None = None
    # Role lookup for structured nodes (e.g. for_statement init/condition/update).
    fields: dict[str, NodeRef] = field(default_factory=dict)

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


class SyntaxTree:
    def __init__(self, text: str, language: "str"):
        self.text = text
        self.language = language
        self.nodes: list[Node] = []
        self.root: NodeRef = -1
        self.had_errors = False

    def add(self, node: Node) -> NodeRef:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def node(self, ref: NodeRef) -> Node:
        return self.nodes[ref]

    def text_of(self, ref: NodeRef) -> str:
        n = self.nodes[ref]
        return self.text[n.start:n.end]

    def kind(self, ref: NodeRef) -> str:
        return self.nodes[ref].kind

    def children(self, ref: NodeRef) -> list[NodeRef]:
        return self.nodes[ref].children

    def field(self, ref: NodeRef, name: str) -> NodeRef | None:
        return self.nodes[ref].fields.get(name)

    def walk(self, ref: NodeRef | None = None) -> Iterator[NodeRef]:
        """Pre-order traversal from `ref` (default: root)."""
        stack = [self.root if ref is None else ref]
        while stack:
            cur = stack.pop()
            yield cur
            stack.extend(reversed(self.nodes[cur].children))

    def find_all(self, kind: str) -> list[NodeRef]:
        return [r for r in self.walk() if self.nodes[r].kind == kind]

    def parent_map(self) -> dict[NodeRef, NodeRef]:
        parents: dict[NodeRef, NodeRef] = {}
        for r in self.walk():
            for c in self.nodes[r].children:
                parents[c] = r
        return parents

    def root_function(self) -> NodeRef | None:
        """The snippet's sole top-level function, if the snippet *is* one.

        Comments and file headers (imports, preprocessor lines, package
        declarations) do not count against "sole".
        """
        code = [
            c
            for c in self.nodes[self.root].children
            if self.nodes[c].kind not in COMMENT_KINDS | HEADER_KINDS
        ]
        if len(code) == 1 and self.nodes[code[0]].kind in FUNCTION_KINDS:
            return code[0]
        return None

    def comment_refs(self) -> list[NodeRef]:
        return [r for r in self.walk() if self.nodes[r].kind in COMMENT_KINDS]
