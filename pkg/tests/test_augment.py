import random

import pytest

from codecl.augment import (
    AugmentConfig,
    TransformKind,
    add_dummy_statement,
    add_try_catch,
    arithmetic_transform,
    generate_anchor,
    permute_declaration,
    permute_statement,
    swap_condition,
    while_for_exchange,
)
from codecl.core import SourceSnippet, normalize
from codecl.errors import UnsupportedForLanguage
from codecl.miniexec import run_source
from codecl.syntax import parse_text
from codecl.syntax.lexer import tokenize


def _tokens(text: str, language: str = "java") -> list[str]:
    return [t.text for t in tokenize(text, language)
            if t.kind not in ("line_comment", "block_comment", "eof")]


def _same_tokens(a: str, b: str, language: str = "java") -> bool:
    return _tokens(a, language) == _tokens(b, language)


# -- per-transform examples ----------------------------------------------------


def test_permute_declaration_swaps_independent_pair():
    tree = parse_text("int a=1; int b=2;", "java")
    out = permute_declaration(tree, random.Random(0))
    assert _same_tokens(out.tree.text, "int b=2; int a=1;")
    assert len(out.sites) == 2


def test_permute_declaration_respects_dependency():
    tree = parse_text("int a=1; int b=a;", "java")
    out = permute_declaration(tree, random.Random(0))
    assert out.tree.text == "int a=1; int b=a;"
    assert out.sites == []


def test_permute_declaration_blocks_two_effectful_initializers():
    text = "int a = sc.nextInt(); int b = f();"
    out = permute_declaration(parse_text(text, "java"), random.Random(0))
    assert out.tree.text == text


def test_swap_condition_mirrors_comparison():
    out = swap_condition(parse_text("a > b", "java"), random.Random(0))
    assert out.tree.text == "b < a"


def test_swap_condition_commutes_numeric_addition():
    out = swap_condition(parse_text("int j; int x; x = j+1;", "java"), random.Random(0))
    assert out.tree.text == "int j; int x; x = 1+j;"


def test_swap_condition_mirrors_lte():
    out = swap_condition(parse_text("a >= b", "java"), random.Random(0))
    assert out.tree.text == "b <= a"


def test_swap_condition_skips_possible_side_effects():
    text = "f() > g()"
    out = swap_condition(parse_text(text, "java"), random.Random(0))
    assert out.tree.text == text
    assert out.sites == []


def test_swap_condition_never_touches_string_concat():
    text = 'String s; int v; s = "v=" + v;'
    out = swap_condition(parse_text(text, "java"), random.Random(0))
    assert out.tree.text == text


def test_swap_condition_is_involution_on_single_site():
    tree = parse_text("a > b", "java")
    once = swap_condition(tree, random.Random(0))
    twice = swap_condition(once.tree, random.Random(0))
    assert twice.tree.text == "a > b"


def test_arithmetic_contracts_to_compound():
    out = arithmetic_transform(parse_text("temp = temp + 1;", "java"), random.Random(0))
    assert _same_tokens(out.tree.text, "temp += 1;")


def test_arithmetic_expands_update():
    out = arithmetic_transform(parse_text("i++;", "java"), random.Random(0))
    assert _same_tokens(out.tree.text, "i = i + 1;")


def test_arithmetic_leaves_plain_assignment():
    text = "x = y + 1;"
    out = arithmetic_transform(parse_text(text, "java"), random.Random(0))
    assert out.tree.text == text
    assert out.sites == []


def test_arithmetic_parenthesizes_compound_expansion():
    out = arithmetic_transform(parse_text("x -= a + b;", "java"), random.Random(0))
    assert _same_tokens(out.tree.text, "x = x - (a + b);")


def test_while_becomes_for():
    out = while_for_exchange(parse_text("while(i<n){i++;}", "java"), random.Random(0))
    assert _same_tokens(out.tree.text, "for(;i<n;){i++;}")


def test_for_with_continue_not_reversed():
    text = "for(i=0;i<n;i++){ if (i==2) continue; s+=i; }"
    out = while_for_exchange(parse_text(text, "java"), random.Random(0))
    assert out.tree.text == text


def test_continue_in_nested_loop_does_not_block_outer():
    text = "for(i=0;i<n;i++){ while(j<i) { j++; continue; } }"
    out = while_for_exchange(parse_text(text, "java"), random.Random(0))
    # outer for converts; the continue binds to the inner while
    assert "while (i<n)" in out.tree.text or "while(i<n)" in out.tree.text


def test_add_dummy_probability_zero_is_identity():
    text = "{ x = 1; }"
    out = add_dummy_statement(parse_text(text, "java"), random.Random(0), 0.0)
    assert out.tree.text == text


def test_add_dummy_inserts_dead_declaration():
    tree = parse_text("void f(){ x = 1; }", "java")
    out = add_dummy_statement(tree, random.Random(0), 1.0)
    assert len(out.sites) == 1
    assert "dead1" in out.tree.text
    before = parse_text("void f(){ x = 1; }", "java")
    assert len(out.tree.find_all("local_variable_declaration")) == \
        len(before.find_all("local_variable_declaration")) + 1


def test_add_dummy_name_is_fresh():
    tree = parse_text("void f(){ int dead1 = 9; dead1 += 1; }", "java")
    out = add_dummy_statement(tree, random.Random(0), 1.0)
    names = [tok for tok in _tokens(out.tree.text) if tok.startswith("dead")]
    assert "dead1" in names
    new = {n for n in names if n != "dead1"}
    assert new and all(n not in ("dead1",) for n in new)


def test_add_try_catch_wraps_statement():
    tree = parse_text("void f(){ x = a / b; }", "java")
    out = add_try_catch(tree, random.Random(0))
    assert _same_tokens(
        out.tree.text, "void f(){ try { x = a / b; } catch (Exception e) { throw e; } }"
    )


def test_add_try_catch_rejected_for_c():
    tree = parse_text("int main(){ return 0; }", "c")
    with pytest.raises(UnsupportedForLanguage):
        add_try_catch(tree, random.Random(0))


def test_add_try_catch_skips_declarations():
    tree = parse_text("void f(){ int x = 1; }", "java")
    out = add_try_catch(tree, random.Random(0))
    assert out.sites == []


def test_permute_statement_swaps_disjoint():
    tree = parse_text("{ a=1; b=2; }", "java")
    out = permute_statement(tree, random.Random(0), 1.0)
    assert _same_tokens(out.tree.text, "{ b=2; a=1; }")


def test_permute_statement_respects_dependency():
    text = "{ a=1; b=a; }"
    out = permute_statement(parse_text(text, "java"), random.Random(0), 1.0)
    assert out.tree.text == text


def test_permute_statement_skips_control_transfer():
    text = "{ return; b=2; }"
    out = permute_statement(parse_text(text, "java"), random.Random(0), 1.0)
    assert out.tree.text == text


# -- anchor generation ------------------------------------------------------------


def test_anchor_is_deterministic(getmax_snippet):
    n = normalize(getmax_snippet)
    cfg = AugmentConfig(language="java", rng_seed=11)
    runs = {generate_anchor(n, cfg).text for _ in range(5)}
    assert len(runs) == 1


def test_anchor_identity_when_all_disabled(getmax_snippet):
    n = normalize(getmax_snippet)
    cfg = AugmentConfig(language="java", enabled=frozenset(), rng_seed=3)
    anchor = generate_anchor(n, cfg)
    assert anchor.is_identity
    assert anchor.text == n.text


def test_anchor_never_identity_when_sites_exist(getmax_snippet):
    n = normalize(getmax_snippet)
    for seed in range(40):
        cfg = AugmentConfig(language="java", rng_seed=seed)
        anchor = generate_anchor(n, cfg)
        assert not anchor.is_identity, f"seed {seed} degenerated to identity"
        assert anchor.text != n.text


def test_anchor_on_siteless_snippet_is_identity():
    n = normalize(SourceSnippet("s", "java", "void f(){}"))
    cfg = AugmentConfig(language="java", rng_seed=5)
    anchor = generate_anchor(n, cfg)
    assert anchor.is_identity
    assert anchor.text == n.text


def test_no_dummy_after_control_transfer():
    tree = parse_text("void f(){ return; }", "java")
    out = add_dummy_statement(tree, random.Random(0), 1.0)
    assert out.tree.text == "void f(){ return; }"


def test_try_catch_auto_disabled_for_c():
    cfg = AugmentConfig(language="c", rng_seed=1)
    assert TransformKind.AddTryCatch not in cfg.active_kinds()
    assert TransformKind.AddTryCatch in AugmentConfig(language="java").active_kinds()


def test_anchor_parses_without_new_errors(corpus):
    for prog in corpus:
        n = normalize(prog.snippet())
        cfg = AugmentConfig(language=prog.language, rng_seed=99)
        anchor = generate_anchor(n, cfg)
        tree = parse_text(anchor.text, prog.language)
        assert not tree.had_errors, f"{prog.name}: anchor no longer parses\n{anchor.text}"


def test_anchor_preserves_semantics_spot_check(corpus):
    # Full 20-seed sweep lives in the acceptance suite; this is the
    # fast development loop over three seeds.
    for prog in corpus:
        n = normalize(prog.snippet())
        expected = [run_source(prog.text, prog.language, i) for i in prog.inputs]
        for seed in range(3):
            cfg = AugmentConfig(language=prog.language, rng_seed=seed)
            anchor = generate_anchor(n, cfg)
            got = [run_source(anchor.text, prog.language, i) for i in prog.inputs]
            assert got == expected, (
                f"{prog.name} seed {seed} diverged\n--- anchor ---\n{anchor.text}"
            )


def test_dummy_statement_keeps_read_sets(corpus):
    from codecl.syntax.analysis import reads_writes

    prog = corpus[0]
    n = normalize(prog.snippet())
    tree = parse_text(n.text, prog.language)
    out = add_dummy_statement(tree, random.Random(1), 1.0)
    before_reads, _ = reads_writes(tree, tree.root)
    after_reads, _ = reads_writes(out.tree, out.tree.root)
    assert before_reads <= after_reads
    assert not any(name.startswith("dead") for name in before_reads)
