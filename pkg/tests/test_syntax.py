import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codecl.core import SourceSnippet, parse
from codecl.errors import UnsupportedLanguage
from codecl.syntax import parse_text
from codecl.syntax.tree import COMMENT_KINDS


def _assert_span_invariants(tree):
    for ref in tree.walk():
        node = tree.node(ref)
        assert 0 <= node.start <= node.end <= len(tree.text)
        prev_end = node.start
        for child in node.children:
            c = tree.node(child)
            assert node.start <= c.start and c.end <= node.end, "child escapes parent span"
            assert c.start >= prev_end, "sibling spans overlap"
            prev_end = c.end


def test_rejects_unregistered_language():
    with pytest.raises(UnsupportedLanguage):
        SourceSnippet("x", "cobol", "DISPLAY 'HI'.")


def test_bubble_sort_structure(bubble_snippet):
    tree = parse(bubble_snippet)
    assert not tree.had_errors
    assert tree.node(tree.root).kind == "program"
    assert tree.node(tree.root).start == 0
    assert tree.node(tree.root).end == len(bubble_snippet.text)
    fors = tree.find_all("for_statement")
    assert len(fors) == 2
    inner, outer = sorted(fors, key=lambda r: tree.node(r).start, reverse=True)
    assert tree.node(inner).start > tree.node(outer).start
    assert len(tree.find_all("if_statement")) == 1
    # nested: the inner for and the if live inside the outer for's span
    o = tree.node(outer)
    assert o.start <= tree.node(inner).start and tree.node(inner).end <= o.end
    _assert_span_invariants(tree)


def test_empty_body_method_parses_clean():
    tree = parse_text("void f(){}", "java")
    assert not tree.had_errors
    methods = tree.find_all("method_declaration")
    assert len(methods) == 1
    body = tree.node(methods[0]).fields["body"]
    stmts = [c for c in tree.children(body) if tree.node(c).kind not in ("{", "}")]
    assert stmts == []


def test_malformed_declaration_recovers():
    text = "int x = ;"
    tree = parse_text(text, "java")
    assert tree.had_errors
    assert tree.node(tree.root).start == 0
    assert tree.node(tree.root).end == len(text)
    assert tree.find_all("ERROR")


def test_comments_are_tree_nodes(bubble_snippet):
    tree = parse(bubble_snippet)
    comments = tree.comment_refs()
    assert len(comments) == 1
    node = tree.node(comments[0])
    assert node.kind in COMMENT_KINDS
    assert tree.text_of(comments[0]) == "// swap elements"
    _assert_span_invariants(tree)


def test_leaf_nodes_carry_text(bubble_snippet):
    tree = parse(bubble_snippet)
    for ref in tree.walk():
        node = tree.node(ref)
        if not node.children and node.kind not in ("ERROR", "program"):
            assert node.leaf_text is not None


def test_c_program_parses(corpus):
    for prog in corpus:
        tree = parse_text(prog.text, prog.language)
        assert not tree.had_errors, f"{prog.name} should parse cleanly"
        _assert_span_invariants(tree)


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=200), st.sampled_from(["java", "c"]))
def test_parse_is_total_on_fuzzed_text(text, language):
    tree = parse_text(text, language)
    assert tree.node(tree.root).end == len(text)
    _assert_span_invariants(tree)


@settings(max_examples=200, deadline=None)
@given(
    st.text(
        alphabet=st.sampled_from(list("intx =+;{}()[]<>/*\"'\\\n.,&|!forwhile")),
        max_size=120,
    ),
    st.sampled_from(["java", "c"]),
)
def test_parse_is_total_on_code_like_soup(text, language):
    tree = parse_text(text, language)
    assert tree.node(tree.root).end == len(text)
    _assert_span_invariants(tree)
