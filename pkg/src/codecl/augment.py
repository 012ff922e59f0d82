"""Semantics-preserving rewrites that generate anchor variants.

All transforms are span edits on the source text, gated by conservative
lexical analysis: any site where equivalence cannot be argued from
identifier read/write sets alone is skipped. The equivalence test suite
runs originals and anchors through the interpreter and requires
byte-identical output, so every rule here errs toward skipping.
"""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass, field

from .core import NormalizedSnippet, canonical_language
from .errors import UnsupportedForLanguage
from .syntax import Edit, SyntaxTree, apply_edits, parse_text
from .syntax.analysis import (
    all_identifier_texts,
    completes_normally,
    contains_call,
    contains_control_transfer,
    contains_kind,
    declared_names,
    reads_writes,
)
from .syntax.tree import FUNCTION_KINDS, STATEMENT_KINDS


class TransformKind(enum.Enum):
    PermuteDeclaration = "PermuteDeclaration"
    SwapCondition = "SwapCondition"
    ArithmeticTransform = "ArithmeticTransform"
    WhileForExchange = "WhileForExchange"
    AddDummyStatement = "AddDummyStatement"
    AddTryCatch = "AddTryCatch"
    PermuteStatement = "PermuteStatement"


TRANSFORM_ORDER = tuple(TransformKind)

# Kinds whose site selection is probabilistic rather than exhaustive.
_SITE_SAMPLED = {TransformKind.AddDummyStatement, TransformKind.PermuteStatement}


@dataclass(frozen=True)
class AugmentConfig:
    language: str
    enabled: frozenset = frozenset(TransformKind)
    per_kind_probability: dict = field(default_factory=dict)
    site_probability: float = 0.1
    rng_seed: int = 0

    def __post_init__(self):
        canonical_language(self.language)
        if not 0.0 <= self.site_probability <= 1.0:
            raise ValueError("site_probability outside [0,1]")
        for k, p in self.per_kind_probability.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability for {k} outside [0,1]")

    def kind_probability(self, kind: TransformKind) -> float:
        return self.per_kind_probability.get(kind, 0.5)

    def active_kinds(self) -> tuple[TransformKind, ...]:
        kinds = [k for k in TRANSFORM_ORDER if k in self.enabled]
        if canonical_language(self.language) == "c":
            # C has no structured exception handling.
            kinds = [k for k in kinds if k is not TransformKind.AddTryCatch]
        return tuple(kinds)


@dataclass(frozen=True)
class AnchorSnippet:
    text: str
    applied: tuple
    parent_id: str

    @property
    def is_identity(self) -> bool:
        return not self.applied


@dataclass
class TransformOutcome:
    tree: SyntaxTree
    sites: list[tuple[int, int]]


# -- shared helpers ----------------------------------------------------------


def _reparse(tree: SyntaxTree, edits: list[Edit]) -> SyntaxTree:
    return parse_text(apply_edits(tree.text, edits), tree.language)


def _outcome(tree: SyntaxTree, edits: list[Edit], sites: list[tuple[int, int]]) -> TransformOutcome:
    if not edits:
        return TransformOutcome(tree, [])
    return TransformOutcome(_reparse(tree, edits), sites)


def _statement_hosts(tree: SyntaxTree) -> list[int]:
    """Nodes whose direct children may be statements."""
    return [r for r in tree.walk() if tree.node(r).kind in ("block", "program")]


def _statement_children(tree: SyntaxTree, host: int) -> list[int]:
    return [c for c in tree.children(host) if tree.node(c).kind in STATEMENT_KINDS]


def _side_effect_free(tree: SyntaxTree, ref: int) -> bool:
    return not contains_kind(
        tree, ref,
        {"method_invocation", "object_creation_expression",
         "assignment_expression", "update_expression"},
    )


_NUMERIC_TYPES = {"int", "long", "short", "byte", "float", "double", "char", "unsigned", "signed", "_Bool"}


def _numeric_names(tree: SyntaxTree) -> tuple[set[str], set[str]]:
    """Names declared with a numeric scalar type / numeric array type."""
    scalars: set[str] = set()
    arrays: set[str] = set()
    for r in tree.walk():
        node = tree.node(r)
        if node.kind not in ("local_variable_declaration", "formal_parameter"):
            continue
        ty = node.fields.get("type")
        if ty is None:
            continue
        ty_node = tree.node(ty)
        words = set(tree.text_of(ty).replace("[", " ").replace("]", " ").replace("*", " ").split())
        numeric = bool(words & _NUMERIC_TYPES)
        is_array = ty_node.kind in ("array_type", "pointer_type")
        names: list[str] = []
        if node.kind == "formal_parameter":
            name_ref = node.fields.get("name")
            if name_ref is not None:
                names.append(tree.node(name_ref).leaf_text or "")
            is_array = is_array or any(tree.node(c).kind == "[" for c in node.children)
        else:
            for c in node.children:
                d = tree.node(c)
                if d.kind == "variable_declarator":
                    names.append(tree.node(d.fields["name"]).leaf_text or "")
                    if any(tree.node(k).kind == "[" for k in d.children):
                        arrays.update(n for n in names if numeric)
        if not numeric:
            continue
        for n in names:
            if not n:
                continue
            (arrays if is_array else scalars).add(n)
    return scalars, arrays


# -- PermuteDeclaration -------------------------------------------------------


def _declaration_pairs(tree: SyntaxTree) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    for host in _statement_hosts(tree):
        stmts = _statement_children(tree, host)
        for a, b in zip(stmts, stmts[1:]):
            if tree.node(a).kind != "local_variable_declaration":
                continue
            if tree.node(b).kind != "local_variable_declaration":
                continue
            if contains_call(tree, a) and contains_call(tree, b):
                continue  # two effectful initializers must not reorder
            da, db = declared_names(tree, a), declared_names(tree, b)
            ra, _ = reads_writes(tree, a)
            rb, _ = reads_writes(tree, b)
            if da & (rb | db) or db & (ra | da):
                continue
            pairs.append((a, b))
    return pairs


def permute_declaration(tree: SyntaxTree, rng: random.Random) -> TransformOutcome:
    """Swap one adjacent pair of independent declaration statements."""
    pairs = _declaration_pairs(tree)
    if not pairs:
        return TransformOutcome(tree, [])
    a, b = pairs[rng.randrange(len(pairs))]
    na, nb = tree.node(a), tree.node(b)
    edits = [
        Edit(na.start, na.end, tree.text_of(b)),
        Edit(nb.start, nb.end, tree.text_of(a)),
    ]
    return _outcome(tree, edits, [na.span, nb.span])


# -- SwapCondition ------------------------------------------------------------

_MIRROR = {"<": ">", ">": "<", "<=": ">=", ">=": "<=", "==": "==", "!=": "!="}
_COMMUTATIVE = {"+", "*"}
_SAFE_OPERAND_KINDS = {
    "identifier", "number_literal", "character_literal", "boolean_literal",
    "field_access", "array_access",
}


def _operand_numeric(tree: SyntaxTree, ref: int, scalars: set[str], arrays: set[str]) -> bool:
    node = tree.node(ref)
    if node.kind in ("number_literal", "character_literal"):
        return True
    if node.kind == "identifier":
        return (node.leaf_text or "") in scalars
    if node.kind == "array_access":
        base = tree.node(node.fields["array"])
        return base.kind == "identifier" and (base.leaf_text or "") in arrays
    if node.kind == "field_access":
        base = tree.node(node.fields["object"])
        # The only member read the grammar subset produces on arrays is
        # the (possibly renamed) length, which is numeric.
        return base.kind == "identifier" and (base.leaf_text or "") in arrays
    return False


def _swap_sites(tree: SyntaxTree) -> list[int]:
    scalars, arrays = _numeric_names(tree)
    sites: list[int] = []
    claimed: list[tuple[int, int]] = []
    for r in tree.walk():
        node = tree.node(r)
        if node.kind != "binary_expression":
            continue
        op = tree.text_of(node.fields["operator"])
        if op not in _MIRROR and op not in _COMMUTATIVE:
            continue
        if any(s <= node.start and node.end <= e for s, e in claimed):
            continue  # nested inside an already chosen swap
        left, right = node.fields["left"], node.fields["right"]
        if tree.node(left).kind not in _SAFE_OPERAND_KINDS:
            continue
        if tree.node(right).kind not in _SAFE_OPERAND_KINDS:
            continue
        if not (_side_effect_free(tree, left) and _side_effect_free(tree, right)):
            continue
        if op in _COMMUTATIVE:
            # Commuting + or * is only safe for provably numeric operands
            # (string concatenation does not commute).
            if not (_operand_numeric(tree, left, scalars, arrays)
                    and _operand_numeric(tree, right, scalars, arrays)):
                continue
        sites.append(r)
        claimed.append(node.span)
    return sites


def swap_condition(tree: SyntaxTree, rng: random.Random) -> TransformOutcome:
    """Mirror comparisons (a>b -> b<a) and commute +/* at safe sites."""
    edits: list[Edit] = []
    sites: list[tuple[int, int]] = []
    for r in _swap_sites(tree):
        node = tree.node(r)
        left, op_ref, right = node.fields["left"], node.fields["operator"], node.fields["right"]
        ln, on, rn = tree.node(left), tree.node(op_ref), tree.node(right)
        op = tree.text_of(op_ref)
        new_op = _MIRROR.get(op, op)
        gap1 = tree.text[ln.end:on.start]
        gap2 = tree.text[on.end:rn.start]
        replacement = tree.text_of(right) + gap1 + new_op + gap2 + tree.text_of(left)
        edits.append(Edit(node.start, node.end, replacement))
        sites.append(node.span)
    return _outcome(tree, edits, sites)


# -- ArithmeticTransform --------------------------------------------------------

_EXPANDABLE = {"+=", "-=", "*=", "/="}
_ATOMIC_RHS = {
    "identifier", "number_literal", "character_literal", "boolean_literal",
    "field_access", "array_access", "parenthesized_expression",
    "method_invocation",
}


def _stable_lvalue(tree: SyntaxTree, ref: int) -> bool:
    node = tree.node(ref)
    if node.kind == "identifier":
        return True
    if node.kind == "array_access":
        return (tree.node(node.fields["array"]).kind == "identifier"
                and _side_effect_free(tree, node.fields["index"]))
    if node.kind == "field_access":
        return tree.node(node.fields["object"]).kind == "identifier"
    return False


def _norm_text(tree: SyntaxTree, ref: int) -> str:
    return "".join(tree.text_of(ref).split())


def arithmetic_transform(tree: SyntaxTree, rng: random.Random) -> TransformOutcome:
    """Rewrite between equivalent arithmetic forms:
    x = x op e <-> x op= e, and x++/x-- <-> x = x +/- 1 (statement sites)."""
    parents = tree.parent_map()
    edits: list[Edit] = []
    sites: list[tuple[int, int]] = []
    for r in tree.walk():
        node = tree.node(r)
        if node.kind == "assignment_expression":
            op = tree.text_of(node.fields["operator"])
            left, right = node.fields["left"], node.fields["right"]
            if not _stable_lvalue(tree, left):
                continue
            if op == "=":
                rn = tree.node(right)
                if rn.kind != "binary_expression":
                    continue
                bop = tree.text_of(rn.fields["operator"])
                if bop not in ("+", "-", "*", "/"):
                    continue
                if _norm_text(tree, rn.fields["left"]) != _norm_text(tree, left):
                    continue
                e_text = tree.text_of(rn.fields["right"])
                edits.append(Edit(node.start, node.end,
                                  f"{tree.text_of(left)} {bop}= {e_text}"))
                sites.append(node.span)
            elif op in _EXPANDABLE:
                e_text = tree.text_of(right)
                if tree.node(right).kind not in _ATOMIC_RHS:
                    e_text = f"({e_text})"
                edits.append(Edit(node.start, node.end,
                                  f"{tree.text_of(left)} = {tree.text_of(left)} {op[:-1]} {e_text}"))
                sites.append(node.span)
        elif node.kind == "update_expression":
            parent = parents.get(r)
            if parent is None:
                continue
            pnode = tree.node(parent)
            statement_site = (
                pnode.kind == "expression_statement"
                or (pnode.kind == "for_statement" and pnode.fields.get("update") == r)
            )
            if not statement_site:
                continue
            operand = node.fields["operand"]
            if not _stable_lvalue(tree, operand):
                continue
            op = tree.text_of(node.fields["operator"])
            lv = tree.text_of(operand)
            edits.append(Edit(node.start, node.end,
                              f"{lv} = {lv} {'+' if op == '++' else '-'} 1"))
            sites.append(node.span)
    return _outcome(tree, edits, sites)


# -- WhileForExchange --------------------------------------------------------------


def _loop_continue_binds_here(tree: SyntaxTree, body: int) -> bool:
    """True if `continue` occurs in `body` without an intervening loop."""
    found = False

    def visit(r: int) -> None:
        nonlocal found
        node = tree.node(r)
        if node.kind in ("while_statement", "do_statement", "for_statement"):
            return  # continue inside binds to the inner loop
        if node.kind == "continue_statement":
            found = True
            return
        for c in node.children:
            visit(c)

    visit(body)
    return found


def while_for_exchange(tree: SyntaxTree, rng: random.Random) -> TransformOutcome:
    """while(C){B} -> for(;C;){B}; for(I;C;U){B} -> {I; while(C){B; U;}}."""
    java = tree.language == "java"
    edits: list[Edit] = []
    sites: list[tuple[int, int]] = []
    refs = [
        r for r in tree.walk()
        if tree.node(r).kind in ("while_statement", "for_statement")
    ]
    # Post-order so closing-brace insertions of nested loops land inside
    # the enclosing loop's insertions at a shared boundary.
    for r in sorted(refs, key=lambda x: tree.node(x).start, reverse=True):
        node = tree.node(r)
        body = node.fields["body"]
        if node.kind == "while_statement":
            cond = tree.node(node.fields["condition"]).fields["expression"]
            edits.append(Edit(node.start, tree.node(body).start,
                              f"for (; {tree.text_of(cond)} ;) "))
            sites.append(node.span)
        else:
            if _loop_continue_binds_here(tree, body):
                continue
            update = node.fields.get("update")
            if update is not None and java and tree.node(update).kind == "expression_list":
                continue  # comma expression is not a Java statement
            if update is not None and not completes_normally(tree, body):
                continue  # the hoisted update would be unreachable
            init = node.fields.get("init")
            cond = node.fields.get("condition")
            cond_text = tree.text_of(cond) if cond is not None else ("true" if java else "1")
            head = "{ "
            if init is not None:
                head += tree.text_of(init) + " "
            head += f"while ({cond_text}) {{ "
            tail = " "
            if update is not None:
                tail += tree.text_of(update) + "; "
            tail += "} }"
            edits.append(Edit(node.start, tree.node(body).start, head))
            edits.append(Edit(node.end, node.end, tail))
            sites.append(node.span)
    return _outcome(tree, edits, sites)


# -- AddDummyStatement ---------------------------------------------------------------


def _fresh_names(tree: SyntaxTree, base: str, count: int) -> list[str]:
    taken = all_identifier_texts(tree)
    out: list[str] = []
    i = 1
    while len(out) < count:
        name = f"{base}{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


def _dummy_sites(tree: SyntaxTree) -> list[int]:
    sites: list[int] = []
    for host in _statement_hosts(tree):
        for stmt in _statement_children(tree, host):
            # Code inserted after a statement that transfers control would
            # be unreachable, which Java rejects.
            if completes_normally(tree, stmt):
                sites.append(stmt)
    return sorted(sites, key=lambda r: tree.node(r).start)


def add_dummy_statement(tree: SyntaxTree, rng: random.Random,
                        site_probability: float = 0.1,
                        force: bool = False) -> TransformOutcome:
    """Insert a never-read variable declaration after sampled statements."""
    candidates = _dummy_sites(tree)
    chosen = [r for r in candidates if rng.random() < site_probability]
    if force and not chosen and candidates and site_probability > 0:
        chosen = [candidates[rng.randrange(len(candidates))]]
    if not chosen:
        return TransformOutcome(tree, [])
    names = _fresh_names(tree, "dead", len(chosen))
    edits: list[Edit] = []
    sites: list[tuple[int, int]] = []
    for name, r in zip(names, chosen):
        node = tree.node(r)
        edits.append(Edit(node.end, node.end, f" int {name} = {rng.randrange(10)};"))
        sites.append(node.span)
    return _outcome(tree, edits, sites)


# -- AddTryCatch ----------------------------------------------------------------------

_SAFE_CALLEE_PREFIXES = ("System.out.", "Math.")
_SAFE_CALLEE_MEMBERS = ("nextInt", "hasNextInt", "hasNext", "nextLong", "length", "charAt")


def _call_is_rethrow_safe(tree: SyntaxTree, call: int) -> bool:
    fn = tree.node(call).fields["function"]
    fn_node = tree.node(fn)
    if fn_node.kind == "identifier":
        # Local helper methods in the snippet declare no checked exceptions.
        name = fn_node.leaf_text or ""
        return any(
            tree.node(d.fields["name"]).leaf_text == name
            for d in map(tree.node, tree.walk())
            if d.kind in FUNCTION_KINDS and "name" in d.fields
        )
    text = "".join(tree.text_of(fn).split())
    if any(text.startswith(p) for p in _SAFE_CALLEE_PREFIXES):
        return True
    member = tree.node(fn_node.fields["name"]).leaf_text if fn_node.kind == "field_access" else None
    return member in _SAFE_CALLEE_MEMBERS


def _try_catch_sites(tree: SyntaxTree) -> list[int]:
    sites: list[int] = []
    for host in _statement_hosts(tree):
        if tree.node(host).kind != "block":
            continue
        for r in _statement_children(tree, host):
            node = tree.node(r)
            if node.kind in ("local_variable_declaration", "empty_statement"):
                continue  # wrapping a declaration would change its scope
            calls = [c for c in tree.walk(r) if tree.node(c).kind == "method_invocation"]
            if not all(_call_is_rethrow_safe(tree, c) for c in calls):
                continue  # precise rethrow could not be guaranteed
            if any(tree.node(c).kind == "object_creation_expression" for c in tree.walk(r)):
                ok = all(
                    tree.text_of(tree.node(c).fields["type"]).strip() == "Scanner"
                    for c in tree.walk(r)
                    if tree.node(c).kind == "object_creation_expression"
                )
                if not ok:
                    continue
            sites.append(r)
    return sites


def add_try_catch(tree: SyntaxTree, rng: random.Random) -> TransformOutcome:
    """Wrap one statement in try { S } catch (Exception e) { throw e; }."""
    if tree.language != "java":
        raise UnsupportedForLanguage("AddTryCatch requires structured exception handling")
    sites = _try_catch_sites(tree)
    if not sites:
        return TransformOutcome(tree, [])
    r = sites[rng.randrange(len(sites))]
    node = tree.node(r)
    taken = all_identifier_texts(tree)
    var = "e"
    i = 1
    while var in taken:
        var = f"e{i}"
        i += 1
    edits = [
        Edit(node.start, node.start, "try { "),
        Edit(node.end, node.end, f" }} catch (Exception {var}) {{ throw {var}; }}"),
    ]
    return _outcome(tree, edits, [node.span])


# -- PermuteStatement ----------------------------------------------------------------------


def _statement_pairs(tree: SyntaxTree) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    for host in _statement_hosts(tree):
        stmts = _statement_children(tree, host)
        for a, b in zip(stmts, stmts[1:]):
            if contains_control_transfer(tree, a) or contains_control_transfer(tree, b):
                continue
            if contains_call(tree, a) or contains_call(tree, b):
                continue
            ra, wa = reads_writes(tree, a)
            rb, wb = reads_writes(tree, b)
            sa = ra | wa | declared_names(tree, a)
            sb = rb | wb | declared_names(tree, b)
            if sa & sb:
                continue
            pairs.append((a, b))
    return pairs


def permute_statement(tree: SyntaxTree, rng: random.Random,
                      site_probability: float = 0.1,
                      force: bool = False) -> TransformOutcome:
    """Swap sampled adjacent statement pairs with disjoint effects."""
    pairs = _statement_pairs(tree)
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()
    for a, b in pairs:
        if a in used or b in used:
            continue
        if rng.random() < site_probability:
            chosen.append((a, b))
            used.update((a, b))
    if force and not chosen and pairs and site_probability > 0:
        chosen = [pairs[rng.randrange(len(pairs))]]
    edits: list[Edit] = []
    sites: list[tuple[int, int]] = []
    for a, b in chosen:
        na, nb = tree.node(a), tree.node(b)
        edits.append(Edit(na.start, na.end, tree.text_of(b)))
        edits.append(Edit(nb.start, nb.end, tree.text_of(a)))
        sites.extend([na.span, nb.span])
    return _outcome(tree, edits, sites)


# -- anchor generation -------------------------------------------------------------------------


def _kind_has_sites(kind: TransformKind, tree: SyntaxTree, cfg: AugmentConfig) -> bool:
    if kind is TransformKind.PermuteDeclaration:
        return bool(_declaration_pairs(tree))
    if kind is TransformKind.SwapCondition:
        return bool(_swap_sites(tree))
    if kind is TransformKind.ArithmeticTransform:
        probe = arithmetic_transform(tree, random.Random(0))
        return bool(probe.sites)
    if kind is TransformKind.WhileForExchange:
        probe = while_for_exchange(tree, random.Random(0))
        return bool(probe.sites)
    if kind is TransformKind.AddDummyStatement:
        return cfg.site_probability > 0 and bool(_dummy_sites(tree))
    if kind is TransformKind.AddTryCatch:
        return tree.language == "java" and bool(_try_catch_sites(tree))
    if kind is TransformKind.PermuteStatement:
        return cfg.site_probability > 0 and bool(_statement_pairs(tree))
    return False


def _apply_kind(kind: TransformKind, tree: SyntaxTree, rng: random.Random,
                cfg: AugmentConfig, force: bool) -> TransformOutcome:
    if kind is TransformKind.PermuteDeclaration:
        return permute_declaration(tree, rng)
    if kind is TransformKind.SwapCondition:
        return swap_condition(tree, rng)
    if kind is TransformKind.ArithmeticTransform:
        return arithmetic_transform(tree, rng)
    if kind is TransformKind.WhileForExchange:
        return while_for_exchange(tree, rng)
    if kind is TransformKind.AddDummyStatement:
        return add_dummy_statement(tree, rng, cfg.site_probability, force=force)
    if kind is TransformKind.AddTryCatch:
        return add_try_catch(tree, rng)
    if kind is TransformKind.PermuteStatement:
        return permute_statement(tree, rng, cfg.site_probability, force=force)
    raise ValueError(kind)


def derive_seed(global_seed: int, snippet_id: str) -> int:
    """Stable per-sample seed: mix(global_seed, snippet_id)."""
    digest = hashlib.sha256(f"{global_seed}:{snippet_id}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


_MAX_REDRAWS = 16


def generate_anchor(n: NormalizedSnippet, cfg: AugmentConfig) -> AnchorSnippet:
    """Apply each enabled transform with its probability, in enum order.

    Deterministic given (snippet, config): the RNG is seeded from
    (cfg.rng_seed, snippet id). When any transform site exists, redraws
    guarantee a non-identity anchor; otherwise the identity is returned
    with an empty `applied` list.
    """
    language = canonical_language(cfg.language)
    rng = random.Random(derive_seed(cfg.rng_seed, n.source_id))
    base_tree = parse_text(n.text, language)
    kinds = cfg.active_kinds()
    could_fire = [
        k for k in kinds
        if cfg.kind_probability(k) > 0 and _kind_has_sites(k, base_tree, cfg)
    ]

    attempts = _MAX_REDRAWS if could_fire else 1
    for attempt in range(attempts):
        # Last attempt forces every fireable kind so a sited snippet never
        # degenerates to the identity by unlucky draws.
        force = bool(could_fire) and attempt == attempts - 1
        tree = base_tree
        applied: list[tuple[TransformKind, tuple[int, int]]] = []
        for kind in kinds:
            fire = rng.random() < cfg.kind_probability(kind)
            if force and kind in could_fire:
                fire = True
            if not fire:
                continue
            outcome = _apply_kind(kind, tree, rng, cfg, force)
            if not outcome.sites:
                continue
            if outcome.tree.had_errors and not base_tree.had_errors:
                continue  # defensive: a rewrite must never introduce errors
            applied.extend((kind, span) for span in outcome.sites)
            tree = outcome.tree
        if applied and tree.text != n.text:
            return AnchorSnippet(tree.text, tuple(applied), n.source_id)
        if not could_fire:
            break
    return AnchorSnippet(n.text, (), n.source_id)
