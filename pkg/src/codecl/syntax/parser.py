"""Recursive-descent snippet parser for Java and C.

Accepts full programs, bare methods, statement sequences and lone
expressions. Anything unparseable is skipped to the next statement
boundary and recorded as an ERROR node, so parsing is total: every
input yields a tree spanning the whole text, with `had_errors` flagging
whether recovery happened.

The grammar covers the procedural core of both languages (declarations,
control flow, try/catch, calls, array and member expressions). It is
not a full front end; constructs outside the subset degrade to ERROR
nodes rather than failures.
"""

from __future__ import annotations

from .lexer import (
    ASSIGN_OPS,
    MODIFIER_WORDS,
    PRIMITIVE_TYPES,
    Token,
    tokenize,
)
from .tree import Node, NodeRef, SyntaxTree

_MAX_DEPTH = 200


class _ParseFail(Exception):
    pass


def parse_text(text: str, language: str) -> SyntaxTree:
    return _Parser(text, language).parse()


class _Parser:
    def __init__(self, text: str, language: str):
        self.tree = SyntaxTree(text, language)
        toks = tokenize(text, language)
        self.comments = [t for t in toks if t.kind in ("line_comment", "block_comment")]
        self.toks = [t for t in toks if t.kind not in ("line_comment", "block_comment")]
        self.pos = 0
        self.java = language == "java"
        self.depth = 0

    # -- token helpers ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.toks) - 1)
        return self.toks[i]

    def at(self, text: str | None = None, kind: str | None = None, offset: int = 0) -> bool:
        t = self.peek(offset)
        if kind is not None and t.kind != kind:
            return False
        if text is not None and t.text != text:
            return False
        return True

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _ParseFail(f"expected {text!r} at {self.peek().start}")
        return self.advance()

    def leaf(self, tok: Token, kind: str | None = None) -> NodeRef:
        return self.tree.add(Node(kind or tok.text, tok.start, tok.end, leaf_text=tok.text))

    def mk(self, kind: str, children: list[NodeRef],
           fields: dict[str, NodeRef] | None = None,
           start: int | None = None, end: int | None = None) -> NodeRef:
        nodes = self.tree.nodes
        if start is None:
            start = nodes[children[0]].start if children else self.peek().start
        if end is None:
            end = nodes[children[-1]].end if children else start
        return self.tree.add(Node(kind, start, end, children=children, fields=fields or {}))

    # -- entry point -------------------------------------------------------

    def parse(self) -> SyntaxTree:
        items: list[NodeRef] = []
        while not self.at(kind="eof"):
            items.append(self._item_with_recovery())
        root = Node("program", 0, len(self.tree.text), children=items)
        self.tree.root = self.tree.add(root)
        self._attach_comments()
        return self.tree

    def _item_with_recovery(self) -> NodeRef:
        start_pos = self.pos
        try:
            self.depth = 0
            return self.parse_item()
        except (_ParseFail, RecursionError):
            return self._recover(start_pos)

    def _recover(self, start_pos: int) -> NodeRef:
        self.tree.had_errors = True
        self.pos = max(self.pos, start_pos)
        if self.pos == start_pos:
            self.advance()  # guarantee progress
        while not self.at(kind="eof") and not self.at(";") and not self.at("}"):
            self.advance()
        if self.at(";"):
            self.advance()
        start = self.toks[start_pos].start
        end = self.toks[self.pos - 1].end if self.pos > start_pos else start
        return self.tree.add(Node("ERROR", start, max(start, end)))

    # -- items --------------------------------------------------------------

    def parse_item(self) -> NodeRef:
        if self.at(kind="preproc"):
            return self.leaf(self.advance(), "preproc")
        if self.java and self.at("import"):
            return self._header_to_semi("import_declaration")
        if self.java and self.at("package"):
            return self._header_to_semi("package_declaration")
        if self._at_class_declaration():
            return self.parse_class()
        if self._looks_like_function():
            return self.parse_function()
        return self.parse_statement()

    def _header_to_semi(self, kind: str) -> NodeRef:
        start = self.peek().start
        kids = [self.leaf(self.advance())]
        while not self.at(";") and not self.at(kind="eof"):
            kids.append(self.leaf(self.advance(), "identifier" if self.peek().kind == "identifier" else None))
        if self.at(";"):
            kids.append(self.leaf(self.advance()))
        return self.mk(kind, kids, start=start)

    def _at_class_declaration(self) -> bool:
        if not self.java:
            return False
        off = 0
        while self.peek(off).text in MODIFIER_WORDS:
            off += 1
        return self.peek(off).text == "class"

    def parse_class(self) -> NodeRef:
        kids: list[NodeRef] = []
        fields: dict[str, NodeRef] = {}
        while self.peek().text in MODIFIER_WORDS:
            kids.append(self.leaf(self.advance(), "modifier"))
        kids.append(self.leaf(self.expect("class")))
        if self.at(kind="identifier"):
            name = self.leaf(self.advance(), "identifier")
            kids.append(name)
            fields["name"] = name
        while not self.at("{") and not self.at(kind="eof"):
            kids.append(self.leaf(self.advance()))  # extends / implements chain
        body_kids: list[NodeRef] = []
        open_tok = self.expect("{")
        body_start = open_tok.start
        open_leaf = self.leaf(open_tok)
        while not self.at("}") and not self.at(kind="eof"):
            pos = self.pos
            try:
                if self._looks_like_function():
                    body_kids.append(self.parse_function())
                else:
                    body_kids.append(self.parse_statement())
            except (_ParseFail, RecursionError):
                body_kids.append(self._recover(pos))
        if self.at("}"):
            close = self.leaf(self.advance())
        else:
            self.tree.had_errors = True
            close = None
        body_end = self.tree.nodes[close].end if close is not None else self.peek().start
        body = self.mk("class_body", [open_leaf] + body_kids + ([close] if close is not None else []),
                       start=body_start, end=body_end)
        kids.append(body)
        fields["body"] = body
        return self.mk("class_declaration", kids, fields)

    def _looks_like_function(self) -> bool:
        save = self.pos
        try:
            while self.peek().text in MODIFIER_WORDS:
                self.advance()
            if not self._try_type():
                return False
            if not self.at(kind="identifier"):
                return False
            self.advance()
            return self.at("(")
        finally:
            self.pos = save

    def _try_type(self) -> bool:
        """Consume a type if one is present; True on success."""
        t = self.peek()
        if t.text in PRIMITIVE_TYPES:
            self.advance()
            while self.peek().text in PRIMITIVE_TYPES:  # long long, unsigned int
                self.advance()
        elif t.kind == "identifier":
            self.advance()
        else:
            return False
        while self.at("[") and self.at("]", offset=1):
            self.advance()
            self.advance()
        if self.at("*") and not self.java:  # C pointer declarator
            while self.at("*"):
                self.advance()
        return True

    def parse_type(self) -> NodeRef:
        start_tok = self.peek()
        if start_tok.text in PRIMITIVE_TYPES:
            kids = [self.leaf(self.advance())]
            while self.peek().text in PRIMITIVE_TYPES:
                kids.append(self.leaf(self.advance()))
            base = self.mk("primitive_type", kids)
        elif start_tok.kind == "identifier":
            base = self.leaf(self.advance(), "type_identifier")
        else:
            raise _ParseFail(f"expected type at {start_tok.start}")
        while self.at("[") and self.at("]", offset=1):
            l, r = self.leaf(self.advance()), self.leaf(self.advance())
            base = self.mk("array_type", [base, l, r])
        while self.at("*") and not self.java:
            star = self.leaf(self.advance())
            base = self.mk("pointer_type", [base, star])
        return base

    def parse_function(self) -> NodeRef:
        kids: list[NodeRef] = []
        fields: dict[str, NodeRef] = {}
        while self.peek().text in MODIFIER_WORDS:
            kids.append(self.leaf(self.advance(), "modifier"))
        ty = self.parse_type()
        kids.append(ty)
        fields["type"] = ty
        if not self.at(kind="identifier"):
            raise _ParseFail("expected function name")
        name = self.leaf(self.advance(), "identifier")
        kids.append(name)
        fields["name"] = name
        params = self.parse_formal_parameters()
        kids.append(params)
        fields["params"] = params
        if self.java and self.at("throws"):
            kids.append(self.leaf(self.advance()))
            while self.at(kind="identifier"):
                kids.append(self.leaf(self.advance(), "type_identifier"))
                if self.at(","):
                    kids.append(self.leaf(self.advance()))
        if self.at(";"):
            kids.append(self.leaf(self.advance()))
        else:
            body = self.parse_block()
            kids.append(body)
            fields["body"] = body
        kind = "method_declaration" if self.java else "function_definition"
        return self.mk(kind, kids, fields)

    def parse_formal_parameters(self) -> NodeRef:
        kids = [self.leaf(self.expect("("))]
        while not self.at(")") and not self.at(kind="eof"):
            if self.at("void") and self.at(")", offset=1):  # C: f(void)
                kids.append(self.leaf(self.advance()))
                break
            kids.append(self.parse_formal_parameter())
            if self.at(","):
                kids.append(self.leaf(self.advance()))
        kids.append(self.leaf(self.expect(")")))
        return self.mk("formal_parameters", kids)

    def parse_formal_parameter(self) -> NodeRef:
        kids: list[NodeRef] = []
        fields: dict[str, NodeRef] = {}
        while self.peek().text in MODIFIER_WORDS:
            kids.append(self.leaf(self.advance(), "modifier"))
        ty = self.parse_type()
        kids.append(ty)
        fields["type"] = ty
        if self.at(kind="identifier"):
            name = self.leaf(self.advance(), "identifier")
            kids.append(name)
            fields["name"] = name
        while self.at("[") and self.at("]", offset=1):  # C: int arr[]
            kids.append(self.leaf(self.advance()))
            kids.append(self.leaf(self.advance()))
        return self.mk("formal_parameter", kids, fields)

    # -- statements ----------------------------------------------------------

    def parse_block(self) -> NodeRef:
        open_tok = self.expect("{")
        kids = [self.leaf(open_tok)]
        while not self.at("}") and not self.at(kind="eof"):
            pos = self.pos
            try:
                kids.append(self.parse_statement())
            except (_ParseFail, RecursionError):
                kids.append(self._recover(pos))
        if self.at("}"):
            kids.append(self.leaf(self.advance()))
        else:
            self.tree.had_errors = True
        return self.mk("block", kids, start=open_tok.start)

    def parse_statement(self) -> NodeRef:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise _ParseFail("nesting too deep")
        try:
            return self._parse_statement_inner()
        finally:
            self.depth -= 1

    def _parse_statement_inner(self) -> NodeRef:
        t = self.peek()
        if t.text == "{":
            return self.parse_block()
        if t.text == ";":
            return self.mk("empty_statement", [self.leaf(self.advance())])
        if t.text == "if":
            return self._parse_if()
        if t.text == "while":
            return self._parse_while()
        if t.text == "do":
            return self._parse_do()
        if t.text == "for":
            return self._parse_for()
        if t.text == "return":
            kids = [self.leaf(self.advance())]
            fields = {}
            if not self.at(";"):
                value = self.parse_expression()
                kids.append(value)
                fields["value"] = value
            kids.append(self._semi())
            return self.mk("return_statement", kids, fields)
        if t.text == "break" or t.text == "continue":
            kids = [self.leaf(self.advance())]
            kids.append(self._semi())
            return self.mk(f"{t.text}_statement", kids)
        if t.text == "try" and self.java:
            return self._parse_try()
        if t.text == "throw" and self.java:
            kids = [self.leaf(self.advance())]
            value = self.parse_expression()
            kids.append(value)
            kids.append(self._semi())
            return self.mk("throw_statement", kids, {"value": value})
        if self._looks_like_declaration():
            return self.parse_declaration()
        expr = self.parse_expression()
        kids = [expr, self._semi()]
        return self.mk("expression_statement", [k for k in kids if k is not None], {"expression": expr})

    def _semi(self) -> NodeRef | None:
        """Consume ';'. Missing terminators are tolerated at a closing brace
        or EOF so bare expression snippets parse cleanly."""
        if self.at(";"):
            return self.leaf(self.advance())
        if self.at("}") or self.at(kind="eof"):
            return None
        raise _ParseFail(f"expected ';' at {self.peek().start}")

    def _parse_condition(self) -> NodeRef:
        open_tok = self.expect("(")
        inner = self.parse_expression()
        close = self.expect(")")
        return self.mk("parenthesized_expression",
                       [self.leaf(open_tok), inner, self.leaf(close)],
                       {"expression": inner})

    def _parse_if(self) -> NodeRef:
        kids = [self.leaf(self.expect("if"))]
        cond = self._parse_condition()
        kids.append(cond)
        cons = self.parse_statement()
        kids.append(cons)
        fields = {"condition": cond, "consequence": cons}
        if self.at("else"):
            kids.append(self.leaf(self.advance()))
            alt = self.parse_statement()
            kids.append(alt)
            fields["alternative"] = alt
        return self.mk("if_statement", kids, fields)

    def _parse_while(self) -> NodeRef:
        kids = [self.leaf(self.expect("while"))]
        cond = self._parse_condition()
        body = self.parse_statement()
        kids += [cond, body]
        return self.mk("while_statement", kids, {"condition": cond, "body": body})

    def _parse_do(self) -> NodeRef:
        kids = [self.leaf(self.expect("do"))]
        body = self.parse_statement()
        kids.append(body)
        kids.append(self.leaf(self.expect("while")))
        cond = self._parse_condition()
        kids.append(cond)
        kids.append(self._semi())
        kids = [k for k in kids if k is not None]
        return self.mk("do_statement", kids, {"body": body, "condition": cond})

    def _parse_for(self) -> NodeRef:
        kids = [self.leaf(self.expect("for"))]
        fields: dict[str, NodeRef] = {}
        kids.append(self.leaf(self.expect("(")))
        if self.at(";"):
            kids.append(self.leaf(self.advance()))
        elif self._looks_like_declaration():
            init = self.parse_declaration()  # consumes ';'
            kids.append(init)
            fields["init"] = init
        else:
            expr = self.parse_expression_list()
            semi = self.leaf(self.expect(";"))
            init = self.mk("expression_statement", [expr, semi], {"expression": expr})
            kids.append(init)
            fields["init"] = init
        if not self.at(";"):
            cond = self.parse_expression()
            kids.append(cond)
            fields["condition"] = cond
        kids.append(self.leaf(self.expect(";")))
        if not self.at(")"):
            upd = self.parse_expression_list()
            kids.append(upd)
            fields["update"] = upd
        kids.append(self.leaf(self.expect(")")))
        body = self.parse_statement()
        kids.append(body)
        fields["body"] = body
        return self.mk("for_statement", kids, fields)

    def _parse_try(self) -> NodeRef:
        kids = [self.leaf(self.expect("try"))]
        body = self.parse_block()
        kids.append(body)
        fields = {"body": body}
        saw_handler = False
        while self.at("catch"):
            saw_handler = True
            ckids = [self.leaf(self.advance())]
            ckids.append(self.leaf(self.expect("(")))
            ty = self.parse_type()
            ckids.append(ty)
            cfields = {"type": ty}
            if self.at(kind="identifier"):
                name = self.leaf(self.advance(), "identifier")
                ckids.append(name)
                cfields["name"] = name
            ckids.append(self.leaf(self.expect(")")))
            cbody = self.parse_block()
            ckids.append(cbody)
            cfields["body"] = cbody
            kids.append(self.mk("catch_clause", ckids, cfields))
        if self.at("finally"):
            saw_handler = True
            kids.append(self.leaf(self.advance()))
            kids.append(self.parse_block())
        if not saw_handler:
            raise _ParseFail("try without catch/finally")
        return self.mk("try_statement", kids, fields)

    def _looks_like_declaration(self) -> bool:
        save = self.pos
        try:
            while self.peek().text in MODIFIER_WORDS:
                self.advance()
            t = self.peek()
            if t.text in PRIMITIVE_TYPES:
                pass
            elif t.kind == "identifier":
                # `Foo bar` is a declaration; `foo(..`, `foo =`, `foo.` are not.
                if not (self.peek(1).kind == "identifier"
                        or (self.peek(1).text == "[" and self.peek(2).text == "]")):
                    return False
            else:
                return False
            if not self._try_type():
                return False
            if not self.at(kind="identifier"):
                return False
            nxt = self.peek(1).text
            return nxt in ("=", ";", ",", "[", ")")
        finally:
            self.pos = save

    def parse_declaration(self) -> NodeRef:
        kids: list[NodeRef] = []
        fields: dict[str, NodeRef] = {}
        while self.peek().text in MODIFIER_WORDS:
            kids.append(self.leaf(self.advance(), "modifier"))
        ty = self.parse_type()
        kids.append(ty)
        fields["type"] = ty
        first = True
        while True:
            if not self.at(kind="identifier"):
                raise _ParseFail("expected declarator name")
            dkids: list[NodeRef] = []
            dfields: dict[str, NodeRef] = {}
            name = self.leaf(self.advance(), "identifier")
            dkids.append(name)
            dfields["name"] = name
            while self.at("["):  # C array declarator: int a[10]
                dkids.append(self.leaf(self.advance()))
                if not self.at("]"):
                    dkids.append(self.parse_expression())
                dkids.append(self.leaf(self.expect("]")))
            if self.at("="):
                dkids.append(self.leaf(self.advance()))
                value = self._parse_initializer()
                dkids.append(value)
                dfields["value"] = value
            kids.append(self.mk("variable_declarator", dkids, dfields))
            first = False
            if self.at(","):
                kids.append(self.leaf(self.advance()))
                continue
            break
        semi = self._semi()
        if semi is not None:
            kids.append(semi)
        return self.mk("local_variable_declaration", kids, fields)

    def _parse_initializer(self) -> NodeRef:
        if self.at("{"):
            return self._parse_array_initializer()
        return self.parse_expression()

    def _parse_array_initializer(self) -> NodeRef:
        kids = [self.leaf(self.expect("{"))]
        while not self.at("}") and not self.at(kind="eof"):
            kids.append(self._parse_initializer())
            if self.at(","):
                kids.append(self.leaf(self.advance()))
        kids.append(self.leaf(self.expect("}")))
        return self.mk("array_initializer", kids)

    # -- expressions -----------------------------------------------------------

    _BINARY_LEVELS = [
        ["||"],
        ["&&"],
        ["|"],
        ["^"],
        ["&"],
        ["==", "!="],
        ["<", ">", "<=", ">="],
        ["<<", ">>", ">>>"],
        ["+", "-"],
        ["*", "/", "%"],
    ]

    def parse_expression_list(self) -> NodeRef:
        first = self.parse_expression()
        if not self.at(","):
            return first
        kids = [first]
        while self.at(","):
            kids.append(self.leaf(self.advance()))
            kids.append(self.parse_expression())
        return self.mk("expression_list", kids)

    def parse_expression(self) -> NodeRef:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise _ParseFail("nesting too deep")
        try:
            return self._parse_assignment()
        finally:
            self.depth -= 1

    def _parse_assignment(self) -> NodeRef:
        left = self._parse_ternary()
        if self.peek().text in ASSIGN_OPS and self.tree.nodes[left].kind in (
            "identifier", "field_access", "array_access", "unary_expression",
        ):
            op = self.leaf(self.advance())
            right = self._parse_assignment()
            return self.mk("assignment_expression", [left, op, right],
                           {"left": left, "operator": op, "right": right})
        return left

    def _parse_ternary(self) -> NodeRef:
        cond = self._parse_binary(0)
        if self.at("?"):
            q = self.leaf(self.advance())
            then = self.parse_expression()
            c = self.leaf(self.expect(":"))
            alt = self._parse_assignment()
            return self.mk("ternary_expression", [cond, q, then, c, alt],
                           {"condition": cond, "consequence": then, "alternative": alt})
        return cond

    def _parse_binary(self, level: int) -> NodeRef:
        if level >= len(self._BINARY_LEVELS):
            return self._parse_unary()
        ops = self._BINARY_LEVELS[level]
        left = self._parse_binary(level + 1)
        while self.peek().text in ops and self.peek().kind == "op":
            op = self.leaf(self.advance())
            right = self._parse_binary(level + 1)
            left = self.mk("binary_expression", [left, op, right],
                           {"left": left, "operator": op, "right": right})
        return left

    _UNARY_OPS = ("!", "~", "+", "-")

    def _parse_unary(self) -> NodeRef:
        t = self.peek()
        if t.text in ("++", "--"):
            op = self.leaf(self.advance())
            operand = self._parse_unary()
            return self.mk("update_expression", [op, operand],
                           {"operator": op, "operand": operand})
        if t.text in self._UNARY_OPS or (not self.java and t.text in ("&", "*")):
            op = self.leaf(self.advance())
            operand = self._parse_unary()
            return self.mk("unary_expression", [op, operand],
                           {"operator": op, "operand": operand})
        return self._parse_postfix()

    def _parse_postfix(self) -> NodeRef:
        node = self._parse_primary()
        while True:
            if self.at("."):
                dot = self.leaf(self.advance())
                if not self.at(kind="identifier") and not self.at("length"):
                    raise _ParseFail("expected member name")
                name = self.leaf(self.advance(), "identifier")
                node = self.mk("field_access", [node, dot, name],
                               {"object": node, "name": name})
            elif self.at("("):
                args = self._parse_arguments()
                node = self.mk("method_invocation", [node, args],
                               {"function": node, "arguments": args})
            elif self.at("["):
                lb = self.leaf(self.advance())
                index = self.parse_expression()
                rb = self.leaf(self.expect("]"))
                node = self.mk("array_access", [node, lb, index, rb],
                               {"array": node, "index": index})
            elif self.at("++") or self.at("--"):
                op = self.leaf(self.advance())
                node = self.mk("update_expression", [node, op],
                               {"operand": node, "operator": op})
            else:
                return node

    def _parse_arguments(self) -> NodeRef:
        kids = [self.leaf(self.expect("("))]
        while not self.at(")") and not self.at(kind="eof"):
            kids.append(self.parse_expression())
            if self.at(","):
                kids.append(self.leaf(self.advance()))
            elif not self.at(")"):
                raise _ParseFail("expected ',' or ')' in arguments")
        kids.append(self.leaf(self.expect(")")))
        return self.mk("argument_list", kids)

    def _parse_primary(self) -> NodeRef:
        t = self.peek()
        if t.text == "(":
            # `(int) x` is a cast; `(x)` is grouping.
            if self.peek(1).text in PRIMITIVE_TYPES and self.peek(2).text == ")":
                lp = self.leaf(self.advance())
                ty = self.parse_type()
                rp = self.leaf(self.expect(")"))
                operand = self._parse_unary()
                return self.mk("cast_expression", [lp, ty, rp, operand],
                               {"type": ty, "operand": operand})
            lp = self.leaf(self.advance())
            inner = self.parse_expression()
            rp = self.leaf(self.expect(")"))
            return self.mk("parenthesized_expression", [lp, inner, rp],
                           {"expression": inner})
        if t.text == "new" and self.java:
            return self._parse_new()
        if t.kind == "number":
            return self.leaf(self.advance(), "number_literal")
        if t.kind == "string":
            return self.leaf(self.advance(), "string_literal")
        if t.kind == "char":
            return self.leaf(self.advance(), "character_literal")
        if t.text in ("true", "false"):
            return self.leaf(self.advance(), "boolean_literal")
        if t.text == "null":
            return self.leaf(self.advance(), "null_literal")
        if t.text == "this":
            return self.leaf(self.advance(), "this")
        if t.kind == "identifier":
            return self.leaf(self.advance(), "identifier")
        raise _ParseFail(f"unexpected token {t.text!r} at {t.start}")

    def _parse_new(self) -> NodeRef:
        kw = self.leaf(self.expect("new"))
        ty = self.parse_type()
        if self.at("("):
            args = self._parse_arguments()
            return self.mk("object_creation_expression", [kw, ty, args],
                           {"type": ty, "arguments": args})
        kids = [kw, ty]
        fields: dict[str, NodeRef] = {"type": ty}
        saw_dim = False
        while self.at("["):
            kids.append(self.leaf(self.advance()))
            if not self.at("]"):
                dim = self.parse_expression()
                kids.append(dim)
                fields.setdefault("dimension", dim)
            kids.append(self.leaf(self.expect("]")))
            saw_dim = True
        if self.at("{"):
            init = self._parse_array_initializer()
            kids.append(init)
            fields["initializer"] = init
            saw_dim = True
        if not saw_dim:
            raise _ParseFail("malformed array creation")
        return self.mk("array_creation_expression", kids, fields)

    # -- comments ------------------------------------------------------------

    def _attach_comments(self) -> None:
        """Insert comment nodes into the deepest containing node so that
        sibling spans stay non-overlapping and ordered."""
        nodes = self.tree.nodes
        for tok in self.comments:
            ref = self.tree.root
            descend = True
            while descend:
                descend = False
                for c in nodes[ref].children:
                    if nodes[c].start <= tok.start and tok.end <= nodes[c].end:
                        ref = c
                        descend = True
                        break
            cref = self.tree.add(Node(tok.kind, tok.start, tok.end, leaf_text=tok.text))
            kids = nodes[ref].children
            at = len(kids)
            for i, c in enumerate(kids):
                if nodes[c].start >= tok.end:
                    at = i
                    break
            kids.insert(at, cref)
