"""Tree-walking interpreter for the Java/C subset the parser accepts.

This is the semantic-equivalence oracle: a program and its transformed
variant are run on the same inputs and their stdout must match byte for
byte. It is deliberately independent of the transform code; it only
consumes parse trees.

Supported runtime surface: 32-bit int arithmetic (truncating division,
C/Java sign rules), doubles, booleans, strings, one-dimensional arrays,
`Scanner.nextInt`/`System.out.println` on the Java side and
`scanf`/`printf` on the C side, plus `Math.min/max/abs` and user-defined
functions. Entry point is `main` when present, else the sole function.
"""

from __future__ import annotations

import re

from .syntax import SyntaxTree
from .syntax.tree import FUNCTION_KINDS

_INT_MIN, _INT_MAX = -(2**31), 2**31
_MAX_STEPS = 5_000_000


class ExecError(Exception):
    pass


class _Return(Exception):
    def __init__(self, value):
        self.value = value


class _Break(Exception):
    pass


class _Continue(Exception):
    pass


class _Thrown(Exception):
    def __init__(self, value):
        self.value = value


def _wrap32(x: int) -> int:
    return (x - _INT_MIN) % (2**32) + _INT_MIN


def _tdiv(a: int, b: int) -> int:
    if b == 0:
        raise ExecError("integer division by zero")
    q = abs(a) // abs(b)
    return _wrap32(-q if (a < 0) != (b < 0) else q)


def _tmod(a: int, b: int) -> int:
    if b == 0:
        raise ExecError("integer modulo by zero")
    return _wrap32(a - _tdiv(a, b) * b)


class Array:
    __slots__ = ("items",)

    def __init__(self, items: list):
        self.items = items

    def __len__(self):
        return len(self.items)


class _TokenInput:
    def __init__(self, text: str):
        self._toks = text.split()
        self._i = 0

    def next_int(self) -> int:
        if self._i >= len(self._toks):
            raise ExecError("input exhausted")
        tok = self._toks[self._i]
        self._i += 1
        try:
            return _wrap32(int(tok))
        except ValueError as exc:
            raise ExecError(f"bad input token {tok!r}") from exc

    def has_next(self) -> bool:
        return self._i < len(self._toks)


class _Scanner:
    def __init__(self, source: _TokenInput):
        self.source = source


_SYSTEM = object()
_SYSOUT = object()
_MATH = object()

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", '"': '"', "'": "'"}

_FMT = re.compile(r"%(-?\d+)?(?:\.(\d+))?(?:l{1,2}|h{1,2})?([dicsfgxXu%])")


def _unescape(body: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class Interpreter:
    def __init__(self, tree: SyntaxTree, stdin: str = ""):
        self.tree = tree
        self.input = _TokenInput(stdin)
        self.out: list[str] = []
        self.steps = 0
        self.functions: dict[str, int] = {}
        for r in tree.walk():
            node = tree.node(r)
            if node.kind in FUNCTION_KINDS and "body" in node.fields:
                name_ref = node.fields.get("name")
                if name_ref is not None:
                    self.functions[tree.node(name_ref).leaf_text or ""] = r

    # -- driving -----------------------------------------------------------

    def run(self) -> str:
        if self.tree.had_errors:
            raise ExecError("refusing to run a tree with parse errors")
        if "main" in self.functions:
            entry = self.functions["main"]
        elif len(self.functions) == 1:
            entry = next(iter(self.functions.values()))
        else:
            raise ExecError("no entry point")
        params = self._param_names(entry)
        args = [Array([]) for _ in params]  # Java main(String[] args)
        self._call_function(entry, args)
        return "".join(self.out)

    def _param_names(self, fn: int) -> list[str]:
        tree = self.tree
        names = []
        params_ref = tree.node(fn).fields.get("params")
        if params_ref is None:
            return names
        for c in tree.children(params_ref):
            node = tree.node(c)
            if node.kind == "formal_parameter" and "name" in node.fields:
                names.append(tree.node(node.fields["name"]).leaf_text or "")
        return names

    def _call_function(self, fn: int, args: list):
        names = self._param_names(fn)
        if len(names) != len(args):
            raise ExecError("argument count mismatch")
        frame = [dict(zip(names, args))]
        body = self.tree.node(fn).fields["body"]
        try:
            self._exec_block(body, frame)
        except _Return as ret:
            return ret.value
        return None

    def _tick(self):
        self.steps += 1
        if self.steps > _MAX_STEPS:
            raise ExecError("step budget exceeded")

    # -- scopes --------------------------------------------------------------

    def _lookup(self, scopes: list[dict], name: str) -> dict:
        for s in reversed(scopes):
            if name in s:
                return s
        raise ExecError(f"undefined variable {name!r}")

    # -- statements ------------------------------------------------------------

    def _exec_block(self, ref: int, scopes: list[dict]) -> None:
        scopes.append({})
        try:
            for c in self.tree.children(ref):
                self._exec_stmt(c, scopes)
        finally:
            scopes.pop()

    def _exec_stmt(self, ref: int, scopes: list[dict]) -> None:
        self._tick()
        tree = self.tree
        node = tree.node(ref)
        kind = node.kind
        if kind in ("{", "}", ";", "line_comment", "block_comment", "empty_statement",
                    "preproc", "import_declaration", "package_declaration"):
            return
        if kind == "block":
            self._exec_block(ref, scopes)
        elif kind == "local_variable_declaration":
            self._exec_declaration(ref, scopes)
        elif kind == "expression_statement":
            self._eval(node.fields["expression"], scopes)
        elif kind == "if_statement":
            if self._truthy(self._eval(node.fields["condition"], scopes)):
                self._exec_stmt(node.fields["consequence"], scopes)
            elif "alternative" in node.fields:
                self._exec_stmt(node.fields["alternative"], scopes)
        elif kind == "while_statement":
            while self._truthy(self._eval(node.fields["condition"], scopes)):
                self._tick()
                try:
                    self._exec_stmt(node.fields["body"], scopes)
                except _Break:
                    break
                except _Continue:
                    continue
        elif kind == "do_statement":
            while True:
                self._tick()
                try:
                    self._exec_stmt(node.fields["body"], scopes)
                except _Break:
                    break
                except _Continue:
                    pass
                if not self._truthy(self._eval(node.fields["condition"], scopes)):
                    break
        elif kind == "for_statement":
            scopes.append({})
            try:
                init = node.fields.get("init")
                if init is not None:
                    self._exec_stmt(init, scopes)
                cond = node.fields.get("condition")
                update = node.fields.get("update")
                while cond is None or self._truthy(self._eval(cond, scopes)):
                    self._tick()
                    try:
                        self._exec_stmt(node.fields["body"], scopes)
                    except _Break:
                        break
                    except _Continue:
                        pass
                    if update is not None:
                        self._eval(update, scopes)
                else:
                    pass
            finally:
                scopes.pop()
        elif kind == "return_statement":
            value = node.fields.get("value")
            raise _Return(None if value is None else self._eval(value, scopes))
        elif kind == "break_statement":
            raise _Break()
        elif kind == "continue_statement":
            raise _Continue()
        elif kind == "throw_statement":
            raise _Thrown(self._eval(node.fields["value"], scopes))
        elif kind == "try_statement":
            self._exec_try(ref, scopes)
        elif kind in FUNCTION_KINDS or kind == "class_declaration":
            return  # declarations handled up front
        else:
            raise ExecError(f"cannot execute node kind {kind!r}")

    def _exec_try(self, ref: int, scopes: list[dict]) -> None:
        tree = self.tree
        node = tree.node(ref)
        catches = [c for c in node.children if tree.node(c).kind == "catch_clause"]
        finally_block = None
        kids = node.children
        for i, c in enumerate(kids):
            if tree.node(c).kind == "finally" and i + 1 < len(kids):
                finally_block = kids[i + 1]
        try:
            self._exec_stmt(node.fields["body"], scopes)
        except _Thrown as thrown:
            if not catches:
                raise
            catch = tree.node(catches[0])
            scopes.append({})
            try:
                if "name" in catch.fields:
                    scopes[-1][tree.node(catch.fields["name"]).leaf_text or ""] = thrown.value
                self._exec_stmt(catch.fields["body"], scopes)
            finally:
                scopes.pop()
        finally:
            if finally_block is not None:
                self._exec_stmt(finally_block, scopes)

    def _exec_declaration(self, ref: int, scopes: list[dict]) -> None:
        tree = self.tree
        node = tree.node(ref)
        for c in node.children:
            d = tree.node(c)
            if d.kind != "variable_declarator":
                continue
            name = tree.node(d.fields["name"]).leaf_text or ""
            dims = [k for k in d.children if tree.node(k).kind == "["]
            value_ref = d.fields.get("value")
            if value_ref is not None:
                value = self._eval_initializer(value_ref, scopes)
            elif dims:
                # C fixed-size array: int a[10];
                size_ref = None
                kids = d.children
                for i, k in enumerate(kids):
                    if tree.node(k).kind == "[" and i + 1 < len(kids) and tree.node(kids[i + 1]).kind != "]":
                        size_ref = kids[i + 1]
                        break
                size = self._as_int(self._eval(size_ref, scopes)) if size_ref is not None else 0
                value = Array([0] * size)
            else:
                value = 0
            scopes[-1][name] = value

    def _eval_initializer(self, ref: int, scopes: list[dict]):
        if self.tree.node(ref).kind == "array_initializer":
            vals = [
                self._eval_initializer(c, scopes)
                for c in self.tree.children(ref)
                if self.tree.node(c).kind not in ("{", "}", ",")
            ]
            return Array(vals)
        return self._eval(ref, scopes)

    # -- expressions -------------------------------------------------------------

    def _truthy(self, v) -> bool:
        if isinstance(v, bool):
            return v
        if isinstance(v, (int, float)):
            return v != 0
        raise ExecError(f"non-boolean condition value {v!r}")

    def _as_int(self, v) -> int:
        if isinstance(v, bool):
            return int(v)
        if isinstance(v, int):
            return v
        raise ExecError(f"expected int, got {v!r}")

    def _eval(self, ref: int, scopes: list[dict]):
        self._tick()
        tree = self.tree
        node = tree.node(ref)
        kind = node.kind
        if kind == "identifier":
            name = node.leaf_text or ""
            if name == "System":
                return _SYSTEM
            if name == "Math":
                return _MATH
            return self._lookup(scopes, name)[name]
        if kind == "number_literal":
            return self._number(node.leaf_text or "0")
        if kind == "string_literal":
            return _unescape((node.leaf_text or '""')[1:-1])
        if kind == "character_literal":
            return _unescape((node.leaf_text or "''")[1:-1])
        if kind == "boolean_literal":
            return node.leaf_text == "true"
        if kind == "null_literal":
            return None
        if kind == "parenthesized_expression":
            return self._eval(node.fields["expression"], scopes)
        if kind == "expression_list":
            result = None
            for c in node.children:
                if tree.node(c).kind != ",":
                    result = self._eval(c, scopes)
            return result
        if kind == "binary_expression":
            return self._eval_binary(node, scopes)
        if kind == "unary_expression":
            return self._eval_unary(node, scopes)
        if kind == "update_expression":
            return self._eval_update(node, scopes)
        if kind == "assignment_expression":
            return self._eval_assignment(node, scopes)
        if kind == "ternary_expression":
            if self._truthy(self._eval(node.fields["condition"], scopes)):
                return self._eval(node.fields["consequence"], scopes)
            return self._eval(node.fields["alternative"], scopes)
        if kind == "array_access":
            arr = self._eval(node.fields["array"], scopes)
            idx = self._as_int(self._eval(node.fields["index"], scopes))
            return self._array_slot(arr, idx)[0]
        if kind == "field_access":
            return self._eval_field(node, scopes)
        if kind == "method_invocation":
            return self._eval_call(node, scopes)
        if kind == "object_creation_expression":
            return self._eval_new_object(node, scopes)
        if kind == "array_creation_expression":
            return self._eval_new_array(node, scopes)
        if kind == "cast_expression":
            return self._eval_cast(node, scopes)
        raise ExecError(f"cannot evaluate node kind {kind!r}")

    def _number(self, text: str):
        t = text.rstrip("lLfFdDuU")
        if any(ch in t for ch in ".eE") and not t.lower().startswith("0x"):
            return float(t)
        try:
            return _wrap32(int(t, 0))
        except ValueError as exc:
            raise ExecError(f"bad numeric literal {text!r}") from exc

    def _eval_binary(self, node, scopes):
        op = self.tree.text_of(node.fields["operator"])
        if op == "&&":
            return self._truthy(self._eval(node.fields["left"], scopes)) and \
                self._truthy(self._eval(node.fields["right"], scopes))
        if op == "||":
            return self._truthy(self._eval(node.fields["left"], scopes)) or \
                self._truthy(self._eval(node.fields["right"], scopes))
        a = self._eval(node.fields["left"], scopes)
        b = self._eval(node.fields["right"], scopes)
        return self._binop(op, a, b)

    def _binop(self, op: str, a, b):
        if op == "+" and (isinstance(a, str) or isinstance(b, str)):
            return self._stringify(a) + self._stringify(b)
        if op in ("==", "!="):
            eq = a == b
            return eq if op == "==" else not eq
        if op in ("<", ">", "<=", ">="):
            if not isinstance(a, (int, float)) or not isinstance(b, (int, float)):
                raise ExecError("ordering on non-numbers")
            return {"<": a < b, ">": a > b, "<=": a <= b, ">=": a >= b}[op]
        if not isinstance(a, (int, float, bool)) or not isinstance(b, (int, float, bool)):
            raise ExecError(f"bad operands for {op}")
        both_int = not (isinstance(a, float) or isinstance(b, float))
        if isinstance(a, bool):
            a = int(a)
        if isinstance(b, bool):
            b = int(b)
        if op == "+":
            return _wrap32(a + b) if both_int else a + b
        if op == "-":
            return _wrap32(a - b) if both_int else a - b
        if op == "*":
            return _wrap32(a * b) if both_int else a * b
        if op == "/":
            if both_int:
                return _tdiv(a, b)
            if b == 0:
                raise ExecError("float division by zero")
            return a / b
        if op == "%":
            if both_int:
                return _tmod(a, b)
            raise ExecError("float modulo unsupported")
        if not both_int:
            raise ExecError(f"bitwise {op} on float")
        if op == "&":
            return _wrap32(a & b)
        if op == "|":
            return _wrap32(a | b)
        if op == "^":
            return _wrap32(a ^ b)
        if op == "<<":
            return _wrap32(a << (b & 31))
        if op == ">>":
            return _wrap32(a >> (b & 31))
        if op == ">>>":
            return _wrap32((a & 0xFFFFFFFF) >> (b & 31))
        raise ExecError(f"unknown operator {op!r}")

    def _eval_unary(self, node, scopes):
        op = self.tree.text_of(node.fields["operator"])
        if op == "&":
            return self._lvalue(node.fields["operand"], scopes)  # C address-of
        v = self._eval(node.fields["operand"], scopes)
        if op == "!":
            return not self._truthy(v)
        if op == "-":
            return _wrap32(-v) if isinstance(v, int) and not isinstance(v, bool) else -v
        if op == "+":
            return v
        if op == "~":
            return _wrap32(~self._as_int(v))
        if op == "*":
            slot, key = v
            return slot[key]
        raise ExecError(f"unknown unary {op!r}")

    def _eval_update(self, node, scopes):
        tree = self.tree
        operand = node.fields["operand"]
        op = tree.text_of(node.fields["operator"])
        slot, key = self._lvalue(operand, scopes)
        old = self._as_int(slot[key])
        new = _wrap32(old + 1 if op == "++" else old - 1)
        slot[key] = new
        prefix = tree.node(node.children[0]).kind in ("++", "--")
        return new if prefix else old

    def _eval_assignment(self, node, scopes):
        tree = self.tree
        op = tree.text_of(node.fields["operator"])
        slot, key = self._lvalue(node.fields["left"], scopes)
        value = self._eval(node.fields["right"], scopes)
        if op != "=":
            value = self._binop(op[:-1], slot[key], value)
        slot[key] = value
        return value

    def _lvalue(self, ref: int, scopes: list[dict]):
        tree = self.tree
        node = tree.node(ref)
        if node.kind == "identifier":
            name = node.leaf_text or ""
            try:
                return self._lookup(scopes, name), name
            except ExecError:
                scopes[-1][name] = 0  # tolerate implicit decl (C-ish)
                return scopes[-1], name
        if node.kind == "array_access":
            arr = self._eval(node.fields["array"], scopes)
            idx = self._as_int(self._eval(node.fields["index"], scopes))
            return self._array_slot(arr, idx)[1]
        if node.kind == "parenthesized_expression":
            return self._lvalue(node.fields["expression"], scopes)
        if node.kind == "unary_expression" and tree.text_of(node.fields["operator"]) == "*":
            v = self._eval(node.fields["operand"], scopes)
            if isinstance(v, tuple):
                return v
        raise ExecError(f"not an lvalue: {node.kind}")

    def _array_slot(self, arr, idx: int):
        if not isinstance(arr, Array):
            raise ExecError("subscript of non-array")
        if idx < 0 or idx >= len(arr.items):
            raise ExecError(f"index {idx} out of bounds for length {len(arr.items)}")
        return arr.items[idx], (arr.items, idx)

    def _eval_field(self, node, scopes):
        obj = self._eval(node.fields["object"], scopes)
        name = self.tree.node(node.fields["name"]).leaf_text or ""
        if obj is _SYSTEM:
            return _SYSOUT  # System.out (also System.in via Scanner path)
        if isinstance(obj, Array):
            # Arrays expose only their length; normalization may have
            # renamed the member, so any field on an array reads it.
            return _wrap32(len(obj.items))
        if isinstance(obj, str) and name == "length":
            return len(obj)
        raise ExecError(f"unknown field {name!r}")

    # -- calls ----------------------------------------------------------------

    def _eval_call(self, node, scopes):
        tree = self.tree
        fn = node.fields["function"]
        fn_node = tree.node(fn)
        arg_refs = [
            c for c in tree.children(node.fields["arguments"])
            if tree.node(c).kind not in ("(", ")", ",")
        ]
        if fn_node.kind == "identifier":
            name = fn_node.leaf_text or ""
            if name in self.functions:
                args = [self._eval(a, scopes) for a in arg_refs]
                return self._call_function(self.functions[name], args)
            return self._builtin_c(name, arg_refs, scopes)
        if fn_node.kind == "field_access":
            member = tree.node(fn_node.fields["name"]).leaf_text or ""
            obj = self._eval(fn_node.fields["object"], scopes)
            args = [self._eval(a, scopes) for a in arg_refs]
            return self._builtin_method(obj, member, args)
        raise ExecError("uncallable expression")

    def _builtin_c(self, name: str, arg_refs: list[int], scopes):
        if name == "printf":
            args = [self._eval(a, scopes) for a in arg_refs]
            if not args or not isinstance(args[0], str):
                raise ExecError("printf needs a format string")
            self.out.append(self._format(args[0], args[1:]))
            return 0
        if name == "scanf":
            if not arg_refs:
                raise ExecError("scanf needs arguments")
            fmt = self._eval(arg_refs[0], scopes)
            specs = [m.group(3) for m in _FMT.finditer(fmt) if m.group(3) != "%"]
            assigned = 0
            for spec, ref in zip(specs, arg_refs[1:]):
                if spec not in ("d", "i", "u"):
                    raise ExecError(f"scanf %{spec} unsupported")
                target = self._eval(ref, scopes)
                if not isinstance(target, tuple):
                    raise ExecError("scanf needs &lvalue")
                slot, key = target
                slot[key] = self.input.next_int()
                assigned += 1
            return assigned
        if name == "puts":
            args = [self._eval(a, scopes) for a in arg_refs]
            self.out.append(self._stringify(args[0]) + "\n")
            return 0
        if name == "putchar":
            args = [self._eval(a, scopes) for a in arg_refs]
            v = args[0]
            self.out.append(v if isinstance(v, str) else chr(self._as_int(v) & 0xFF))
            return 0
        if name == "abs":
            args = [self._eval(a, scopes) for a in arg_refs]
            return _wrap32(abs(self._as_int(args[0])))
        raise ExecError(f"unknown function {name!r}")

    def _builtin_method(self, obj, member: str, args: list):
        if obj is _SYSOUT:
            if member == "println":
                self.out.append((self._stringify(args[0]) if args else "") + "\n")
                return None
            if member == "print":
                self.out.append(self._stringify(args[0]))
                return None
            raise ExecError(f"unknown System.out.{member}")
        if obj is _MATH:
            nums = args
            if member == "max":
                return max(nums)
            if member == "min":
                return min(nums)
            if member == "abs":
                v = nums[0]
                return _wrap32(abs(v)) if isinstance(v, int) else abs(v)
            raise ExecError(f"unknown Math.{member}")
        if isinstance(obj, _Scanner):
            if member in ("nextInt", "nextLong"):
                return obj.source.next_int()
            if member in ("hasNextInt", "hasNext"):
                return obj.source.has_next()
            raise ExecError(f"unknown Scanner.{member}")
        if isinstance(obj, str):
            if member == "length":
                return len(obj)
            if member == "charAt":
                return obj[self._as_int(args[0])]
        raise ExecError(f"unknown method {member!r}")

    def _eval_new_object(self, node, scopes):
        tree = self.tree
        ty = tree.text_of(node.fields["type"]).strip()
        if ty == "Scanner":
            return _Scanner(self.input)
        raise ExecError(f"cannot construct {ty!r}")

    def _eval_new_array(self, node, scopes):
        init = node.fields.get("initializer")
        if init is not None:
            return self._eval_initializer(init, scopes)
        dim = node.fields.get("dimension")
        size = self._as_int(self._eval(dim, scopes)) if dim is not None else 0
        if size < 0:
            raise ExecError("negative array size")
        return Array([0] * size)

    def _eval_cast(self, node, scopes):
        ty = self.tree.text_of(node.fields["type"]).replace(" ", "")
        v = self._eval(node.fields["operand"], scopes)
        if ty in ("int", "long", "short", "byte"):
            if isinstance(v, float):
                return _wrap32(int(v))
            return _wrap32(self._as_int(v))
        if ty in ("double", "float"):
            return float(v)
        return v

    # -- output formatting ---------------------------------------------------

    def _stringify(self, v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            text = repr(v)
            return text if ("." in text or "e" in text or "n" in text) else text + ".0"
        if v is None:
            return "null"
        if isinstance(v, Array):
            raise ExecError("cannot print a raw array")
        return str(v)

    def _format(self, fmt: str, args: list) -> str:
        out: list[str] = []
        pos = 0
        ai = 0
        for m in _FMT.finditer(fmt):
            out.append(fmt[pos:m.start()])
            pos = m.end()
            spec = m.group(3)
            if spec == "%":
                out.append("%")
                continue
            if ai >= len(args):
                raise ExecError("printf: not enough arguments")
            v = args[ai]
            ai += 1
            width = m.group(1) or ""
            prec = ("." + m.group(2)) if m.group(2) else ""
            if spec in ("d", "i", "u"):
                out.append(("%" + width + "d") % self._as_int(v))
            elif spec == "c":
                out.append(v if isinstance(v, str) else chr(self._as_int(v) & 0xFF))
            elif spec == "s":
                out.append(("%" + width + "s") % self._stringify(v))
            elif spec in ("f", "g"):
                out.append(("%" + width + (prec or ".6") + spec) % float(v))
            elif spec in ("x", "X"):
                out.append(("%" + width + spec) % (self._as_int(v) & 0xFFFFFFFF))
        out.append(fmt[pos:])
        return "".join(out)


def run_tree(tree: SyntaxTree, stdin: str = "") -> str:
    """Execute a parsed program and return its stdout."""
    return Interpreter(tree, stdin).run()


def run_source(text: str, language: str, stdin: str = "") -> str:
    from .syntax import parse_text

    return run_tree(parse_text(text, language), stdin)
