"""Lexical read/write analysis used to gate the statement-reordering
transforms. Deliberately conservative: identifiers only, no aliasing,
array and member writes taint the base identifier in both directions.
"""

from __future__ import annotations

from .tree import NodeRef, SyntaxTree

CONTROL_TRANSFER_KINDS = {
    "return_statement",
    "break_statement",
    "continue_statement",
    "throw_statement",
}


def _base_identifier(tree: SyntaxTree, ref: NodeRef) -> NodeRef | None:
    """The identifier at the root of an lvalue chain (a, a[i], a.f)."""
    node = tree.node(ref)
    while node.kind in ("array_access", "field_access", "parenthesized_expression"):
        nxt = node.fields.get("array") or node.fields.get("object") or node.fields.get("expression")
        if nxt is None:
            return None
        ref = nxt
        node = tree.node(ref)
    return ref if node.kind == "identifier" else None


def reads_writes(tree: SyntaxTree, ref: NodeRef) -> tuple[set[str], set[str]]:
    """Identifier names read and written anywhere under `ref`.

    A write through a subscript or member also counts the base as read,
    and everything mentioned on a left-hand side other than the base
    identifier (indices, nested members) counts as read.
    """
    reads: set[str] = set()
    writes: set[str] = set()

    def visit(r: NodeRef) -> None:
        node = tree.node(r)
        kind = node.kind
        if kind == "assignment_expression":
            left, right = node.fields["left"], node.fields["right"]
            base = _base_identifier(tree, left)
            if base is not None:
                writes.add(tree.node(base).leaf_text or "")
                if tree.node(left).kind != "identifier" or tree.text_of(node.fields["operator"]) != "=":
                    reads.add(tree.node(base).leaf_text or "")
            for c in tree.children(left):
                if c != base:
                    visit(c)
            visit(right)
            return
        if kind == "update_expression":
            operand = node.fields["operand"]
            base = _base_identifier(tree, operand)
            if base is not None:
                name = tree.node(base).leaf_text or ""
                writes.add(name)
                reads.add(name)
            visit(operand)
            return
        if kind == "variable_declarator":
            name = node.fields.get("name")
            if name is not None:
                writes.add(tree.node(name).leaf_text or "")
            value = node.fields.get("value")
            if value is not None:
                visit(value)
            return
        if kind == "method_invocation":
            # The callee name itself is neither read nor written data.
            fn = node.fields["function"]
            if tree.node(fn).kind != "identifier":
                visit(fn)
            visit(node.fields["arguments"])
            return
        if kind == "identifier":
            reads.add(node.leaf_text or "")
            return
        for c in node.children:
            visit(c)

    visit(ref)
    reads.discard("")
    writes.discard("")
    return reads, writes


def declared_names(tree: SyntaxTree, ref: NodeRef) -> set[str]:
    names: set[str] = set()
    for r in tree.walk(ref):
        node = tree.node(r)
        if node.kind == "variable_declarator":
            name = node.fields.get("name")
            if name is not None:
                names.add(tree.node(name).leaf_text or "")
    return names


def contains_kind(tree: SyntaxTree, ref: NodeRef, kinds: set[str]) -> bool:
    return any(tree.node(r).kind in kinds for r in tree.walk(ref))


def contains_control_transfer(tree: SyntaxTree, ref: NodeRef) -> bool:
    return contains_kind(tree, ref, CONTROL_TRANSFER_KINDS)


def contains_call(tree: SyntaxTree, ref: NodeRef) -> bool:
    return contains_kind(tree, ref, {"method_invocation", "object_creation_expression"})


def completes_normally(tree: SyntaxTree, ref: NodeRef) -> bool:
    """Conservative reachability: False only when the statement provably
    transfers control (so inserting a statement after it would be
    unreachable, which Java rejects at compile time)."""
    node = tree.node(ref)
    kind = node.kind
    if kind in CONTROL_TRANSFER_KINDS:
        return False
    if kind == "block":
        stmts = [c for c in node.children if tree.node(c).kind in _BLOCK_STATEMENT_KINDS]
        return completes_normally(tree, stmts[-1]) if stmts else True
    if kind == "if_statement":
        alt = node.fields.get("alternative")
        if alt is None:
            return True
        return completes_normally(tree, node.fields["consequence"]) or \
            completes_normally(tree, alt)
    if kind in ("while_statement", "for_statement", "do_statement"):
        cond = node.fields.get("condition")
        cond_text = tree.text_of(cond).strip() if cond is not None else ""
        inner = cond_text.strip("()").strip()
        if (cond is None or inner in ("true", "1")) and not _has_break(tree, node.fields["body"]):
            return False  # provably infinite loop
        return True
    if kind == "try_statement":
        return True
    return True


def _has_break(tree: SyntaxTree, body: NodeRef) -> bool:
    def visit(r: NodeRef) -> bool:
        node = tree.node(r)
        if node.kind == "break_statement":
            return True
        if node.kind in ("while_statement", "do_statement", "for_statement"):
            return False  # break inside binds to the inner loop
        return any(visit(c) for c in node.children)

    return visit(body)


_BLOCK_STATEMENT_KINDS = {
    "block", "local_variable_declaration", "expression_statement",
    "if_statement", "while_statement", "do_statement", "for_statement",
    "return_statement", "break_statement", "continue_statement",
    "try_statement", "throw_statement", "empty_statement",
}


def all_identifier_texts(tree: SyntaxTree) -> set[str]:
    out: set[str] = set()
    for r in tree.walk():
        node = tree.node(r)
        if node.kind in ("identifier", "type_identifier") and node.leaf_text:
            out.add(node.leaf_text)
    return out
