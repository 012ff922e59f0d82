"""Critical-path token extraction: a pruned depth-first walk of the tree.

What survives: identifiers, literals, operators, control keywords,
assignment/update operators, and member/subscript expressions collapsed
to single composite atoms (arr.length, arr[j-1]). What is dropped:
punctuation, braces, parentheses, declaration type keywords, class and
method headers. Parameters are kept (with their type word) only when
the snippet root is a bare function, where the signature is part of the
snippet's content rather than container plumbing.

For-statements emit condition, update, initializer, then body. The
rules live in `EMIT_RULES`, keyed by node kind, so a new grammar only
needs table entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyTree
from .syntax import SyntaxTree
from .syntax.tree import COMMENT_KINDS, FUNCTION_KINDS, HEADER_KINDS, STATEMENT_KINDS

FORBIDDEN_TOKENS = frozenset(["{", "}", "(", ")", ";", ","])


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    source_id: str = ""
    normalized: bool = False

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


# kind -> rule name; rules with structure are handled by dedicated walkers.
EMIT_RULES: dict[str, str] = {
    "program": "children",
    "class_declaration": "class",
    "class_body": "children",
    "method_declaration": "function",
    "function_definition": "function",
    "block": "children",
    "local_variable_declaration": "declaration",
    "expression_statement": "children",
    "if_statement": "if",
    "while_statement": "while",
    "do_statement": "do",
    "for_statement": "for",
    "return_statement": "keyword_then_children",
    "break_statement": "keyword_only",
    "continue_statement": "keyword_only",
    "try_statement": "try",
    "throw_statement": "keyword_then_children",
    "empty_statement": "skip",
    "ERROR": "skip",
    "parenthesized_expression": "children",
    "expression_list": "children",
    "binary_expression": "children",
    "assignment_expression": "children",
    "unary_expression": "children",
    "update_expression": "children",
    "ternary_expression": "children",
    "field_access": "composite",
    "array_access": "composite",
    "method_invocation": "invocation",
    "object_creation_expression": "creation",
    "array_creation_expression": "creation",
    "array_initializer": "children",
    "cast_expression": "cast",
    "identifier": "leaf",
    "number_literal": "leaf",
    "string_literal": "leaf",
    "character_literal": "leaf",
    "boolean_literal": "leaf",
    "null_literal": "leaf",
    "this": "leaf",
}

# Leaf kinds emitted verbatim when met as direct children ("children" rule).
_OPERATOR_LEAVES = frozenset(
    ["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
     "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||",
     "!", "~", "&", "|", "^", "<<", ">>", ">>>", "++", "--", "?", ":"]
)

_DROPPED_LEAVES = frozenset(
    ["(", ")", "{", "}", "[", "]", ";", ",", ".", "modifier", "new",
     "primitive_type", "type_identifier", "array_type", "pointer_type",
     "if", "else", "while", "for", "do", "return", "break", "continue",
     "try", "catch", "finally", "throw", "throws", "class", "import",
     "package", "@"]
)


def _squash(text: str) -> str:
    return "".join(text.split())


class _Extractor:
    def __init__(self, tree: SyntaxTree):
        self.tree = tree
        self.out: list[str] = []
        self.root_fn = tree.root_function()

    def run(self) -> list[str]:
        self.visit(self.tree.root)
        return self.out

    def emit(self, token: str) -> None:
        if token and token not in FORBIDDEN_TOKENS:
            self.out.append(token)

    def visit_children(self, ref: int) -> None:
        tree = self.tree
        for c in tree.children(ref):
            node = tree.node(c)
            if node.kind in COMMENT_KINDS or node.kind in HEADER_KINDS:
                continue
            if node.children or node.kind in EMIT_RULES:
                self.visit(c)
            elif node.kind in _OPERATOR_LEAVES:
                self.emit(node.leaf_text or node.kind)
            # other bare leaves (punctuation, keywords) are dropped

    def visit(self, ref: int) -> None:
        tree = self.tree
        node = tree.node(ref)
        rule = EMIT_RULES.get(node.kind)
        if rule is None:
            if node.kind in _OPERATOR_LEAVES:
                self.emit(node.leaf_text or node.kind)
            elif node.children:
                self.visit_children(ref)
            return
        if rule == "skip":
            return
        if rule == "leaf":
            self.emit(node.leaf_text or tree.text_of(ref))
        elif rule == "children":
            self.visit_children(ref)
        elif rule == "composite":
            self.emit(_squash(tree.text_of(ref)))
        elif rule == "class":
            body = node.fields.get("body")
            if body is not None:
                self.visit_children(body)
        elif rule == "function":
            if ref == self.root_fn:
                params = node.fields.get("params")
                if params is not None:
                    for c in tree.children(params):
                        p = tree.node(c)
                        if p.kind != "formal_parameter":
                            continue
                        ty = p.fields.get("type")
                        if ty is not None:
                            self.emit(_squash(tree.text_of(ty)))
                        name = p.fields.get("name")
                        if name is not None:
                            self.emit(tree.node(name).leaf_text or "")
            body = node.fields.get("body")
            if body is not None:
                self.visit(body)
        elif rule == "declaration":
            for c in tree.children(ref):
                d = tree.node(c)
                if d.kind != "variable_declarator":
                    continue
                name = d.fields.get("name")
                if name is not None:
                    self.emit(tree.node(name).leaf_text or "")
                for k in tree.children(c):
                    if k == name:
                        continue
                    kind_k = tree.node(k).kind
                    if kind_k == "=":
                        self.emit("=")
                    elif kind_k not in ("[", "]"):
                        self.visit(k)  # initializer or array-size expression
        elif rule == "if":
            self.emit("if")
            self.visit(node.fields["condition"])
            self.visit(node.fields["consequence"])
            alt = node.fields.get("alternative")
            if alt is not None:
                self.emit("else")
                self.visit(alt)
        elif rule == "while":
            self.emit("while")
            self.visit(node.fields["condition"])
            self.visit(node.fields["body"])
        elif rule == "do":
            self.emit("do")
            self.visit(node.fields["body"])
            self.emit("while")
            self.visit(node.fields["condition"])
        elif rule == "for":
            # Condition, update, initializer, then body.
            self.emit("for")
            cond = node.fields.get("condition")
            if cond is not None:
                self.visit(cond)
            update = node.fields.get("update")
            if update is not None:
                self.visit(update)
            init = node.fields.get("init")
            if init is not None:
                self.visit(init)
            self.visit(node.fields["body"])
        elif rule == "keyword_then_children":
            kw = tree.node(node.children[0])
            self.emit(kw.leaf_text or kw.kind)
            for c in node.children[1:]:
                if tree.node(c).kind not in (";",):
                    self.visit(c)
        elif rule == "keyword_only":
            kw = tree.node(node.children[0])
            self.emit(kw.leaf_text or kw.kind)
        elif rule == "try":
            self.emit("try")
            self.visit(node.fields["body"])
            for c in tree.children(ref):
                cn = tree.node(c)
                if cn.kind == "catch_clause":
                    self.emit("catch")
                    name = cn.fields.get("name")
                    if name is not None:
                        self.emit(tree.node(name).leaf_text or "")
                    self.visit(cn.fields["body"])
                elif cn.kind == "finally":
                    self.emit("finally")
                elif cn.kind == "block" and c != node.fields["body"]:
                    self.visit(c)
        elif rule == "invocation":
            fn = node.fields["function"]
            self.emit(_squash(tree.text_of(fn)))
            self.visit_children(node.fields["arguments"])
        elif rule == "creation":
            self.emit("new")
            ty = node.fields.get("type")
            if ty is not None:
                self.emit(_squash(tree.text_of(ty)))
            for c in tree.children(ref):
                cn = tree.node(c)
                if cn.kind in ("new", "[", "]") or c == ty:
                    continue
                if cn.kind == "argument_list":
                    self.visit_children(c)
                else:
                    self.visit(c)
        elif rule == "cast":
            ty = node.fields.get("type")
            if ty is not None:
                self.emit(_squash(tree.text_of(ty)))
            self.visit(node.fields["operand"])
        else:  # pragma: no cover - table/rules kept in sync
            raise AssertionError(f"unhandled rule {rule!r}")


def extract_path(tree: SyntaxTree, source_id: str = "", normalized: bool = False) -> TokenSequence:
    """Reduce a tree to its critical-path token sequence.

    Deterministic; raises EmptyTree when the snippet holds no
    statement-bearing content (e.g. an empty method body).
    """
    tokens = _Extractor(tree).run()
    if not tokens:
        raise EmptyTree(f"no extractable content in snippet {source_id!r}")
    return TokenSequence(tuple(tokens), source_id=source_id, normalized=normalized)
