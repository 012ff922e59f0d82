import re

import pytest

from codecl.core import (
    SourceSnippet,
    is_canonical_name,
    normalize,
    parse,
    strip_comments,
)
from codecl.syntax.lexer import tokenize


def _code_tokens(text: str, language: str) -> list[str]:
    return [
        t.text for t in tokenize(text, language)
        if t.kind not in ("line_comment", "block_comment", "eof")
    ]


def test_strip_line_comment():
    s = SourceSnippet("s", "java", "int n; // count")
    assert strip_comments(s).text == "int n; "


def test_strip_block_comments():
    s = SourceSnippet("s", "java", "/*a*/x/*b*/=1;")
    assert strip_comments(s).text == "x=1;"


def test_strip_removes_only_the_comment(bubble_snippet):
    stripped = strip_comments(bubble_snippet)
    assert "// swap elements" not in stripped.text
    expected = bubble_snippet.text.replace("// swap elements", "")
    assert stripped.text == expected


def test_strip_preserves_code_token_stream(corpus):
    for prog in corpus:
        before = _code_tokens(prog.text, prog.language)
        after = _code_tokens(strip_comments(prog.snippet()).text, prog.language)
        assert before == after, f"{prog.name}: comment removal altered code tokens"


def test_strip_does_not_glue_tokens():
    s = SourceSnippet("s", "java", "int/*c*/x = 1;")
    text = strip_comments(s).text
    assert _code_tokens(text, "java") == ["int", "x", "=", "1", ";"]


def test_getmax_numbering_matches_reference(getmax_snippet):
    n = normalize(getmax_snippet)
    assert n.rename_map == {"getMax": "var1", "a": "var2", "b": "var3"}
    assert n.text == "public int var1(int var2, int var3){ if (var2>var3) return var2; else return var3;}"


def test_zero_identifier_snippet_unchanged():
    s = SourceSnippet("s", "java", "return 1;")
    n = normalize(s)
    assert n.text == "return 1;"
    assert n.rename_map == {}


def test_rename_map_is_injective_and_contiguous(corpus):
    for prog in corpus:
        n = normalize(prog.snippet())
        values = list(n.rename_map.values())
        assert len(set(values)) == len(values)
        assert all(is_canonical_name(v) for v in values)
        indices = sorted(int(v[3:]) for v in values)
        assert indices == list(range(1, len(values) + 1))


def test_normalize_is_idempotent(corpus, bubble_snippet, getmax_snippet):
    snippets = [p.snippet() for p in corpus] + [bubble_snippet, getmax_snippet]
    for s in snippets:
        once = normalize(s)
        twice = normalize(SourceSnippet(s.id, s.language, once.text, s.label))
        assert twice.text == once.text, f"{s.id}: normalize not idempotent"


def test_no_comments_remain_after_normalize(corpus):
    for prog in corpus:
        n = normalize(prog.snippet())
        tree = parse(SourceSnippet(prog.name, prog.language, n.text))
        assert tree.comment_refs() == []


def test_keywords_types_and_literals_untouched(bubble_snippet):
    n = normalize(bubble_snippet)
    assert "int" in n.text and "for" in n.text and "if" in n.text
    assert "BubbleSortExample" in n.text  # class name kept
    assert "bubbleSort" in n.text  # method name kept when root is a class
    assert "0" in n.text
    for original in n.rename_map:
        # No renamed identifier may survive as a standalone token.
        assert not re.search(rf"\b{re.escape(original)}\b", n.text)


def test_bubble_rename_covers_member_access(bubble_snippet):
    n = normalize(bubble_snippet)
    assert n.rename_map["arr"] == "var1"
    assert "var1.var3" in n.text.replace(" ", "")
    assert set(n.rename_map) == {"arr", "n", "length", "temp", "i", "j"}


def test_library_calls_not_renamed(corpus):
    for prog in corpus:
        if prog.language != "java":
            continue
        n = normalize(prog.snippet())
        assert "System.out.println" in n.text
        assert "nextInt" in n.text
    for prog in corpus:
        if prog.language != "c":
            continue
        n = normalize(prog.snippet())
        assert "printf" in n.text
        assert "main" in n.text  # entry point must survive


def test_normalize_executes_identically(corpus):
    from codecl.miniexec import run_source

    for prog in corpus:
        n = normalize(prog.snippet())
        for stdin in prog.inputs:
            assert run_source(n.text, prog.language, stdin) == \
                run_source(prog.text, prog.language, stdin), prog.name
