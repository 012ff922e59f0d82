"""Tolerant lexer for the Java/C snippet grammars.

Never raises: unterminated strings and comments run to end of line/file,
bytes that fit nothing become `unknown` tokens for the parser to recover
from.
"""

from __future__ import annotations

from dataclasses import dataclass

JAVA_KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while var record sealed
    permits yield true false null""".split()
)

C_KEYWORDS = frozenset(
    """auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    _Bool""".split()
)

MODIFIER_WORDS = frozenset(
    """public private protected static final abstract native synchronized
    transient volatile strictfp const extern inline register signed
    unsigned""".split()
)

PRIMITIVE_TYPES = frozenset(
    "void boolean byte char short int long float double _Bool".split()
)

# Maximal munch: longest operators first.
OPERATORS = [
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "==", "!=", "<=", ">=", "&&",
    "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<",
    ">>", "=", "+", "-", "*", "/", "%", "<", ">", "!", "~", "&", "|", "^",
    "?", ":", ".", "@",
]

PUNCT = frozenset("(){}[];,")

ASSIGN_OPS = frozenset(["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="])
COMPOUND_ASSIGN_OPS = frozenset(["+=", "-=", "*=", "/="])


@dataclass
class Token:
    kind: str  # identifier | number | string | char | op | punct | keyword | line_comment | block_comment | preproc | unknown | eof
    text: str
    start: int
    end: int


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def tokenize(text: str, language: str) -> list[Token]:
    keywords = JAVA_KEYWORDS if language == "java" else C_KEYWORDS
    toks: list[Token] = []
    i, n = 0, len(text)
    at_line_start = True
    while i < n:
        ch = text[i]
        if ch in " \t\r\f\v":
            i += 1
            continue
        if ch == "\n":
            i += 1
            at_line_start = True
            continue
        start = i
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            toks.append(Token("line_comment", text[start:i], start, i))
        elif ch == "/" and i + 1 < n and text[i + 1] == "*":
            i += 2
            while i < n and not (text[i] == "*" and i + 1 < n and text[i + 1] == "/"):
                i += 1
            i = min(i + 2, n)
            toks.append(Token("block_comment", text[start:i], start, i))
        elif ch == "#" and at_line_start and language == "c":
            # Preprocessor line, honoring backslash continuations.
            while i < n and text[i] != "\n":
                if text[i] == "\\" and i + 1 < n and text[i + 1] == "\n":
                    i += 2
                    continue
                i += 1
            toks.append(Token("preproc", text[start:i], start, i))
        elif ch == '"':
            i += 1
            while i < n and text[i] != '"' and text[i] != "\n":
                i += 2 if text[i] == "\\" and i + 1 < n else 1
            i = min(i + 1, n)
            toks.append(Token("string", text[start:i], start, i))
        elif ch == "'":
            i += 1
            while i < n and text[i] != "'" and text[i] != "\n":
                i += 2 if text[i] == "\\" and i + 1 < n else 1
            i = min(i + 1, n)
            toks.append(Token("char", text[start:i], start, i))
        elif ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            i += 1
            while i < n and (text[i].isalnum() or text[i] == "." or
                             (text[i] in "+-" and text[i - 1] in "eEpP")):
                i += 1
            toks.append(Token("number", text[start:i], start, i))
        elif _is_ident_start(ch):
            i += 1
            while i < n and _is_ident_part(text[i]):
                i += 1
            word = text[start:i]
            toks.append(Token("keyword" if word in keywords else "identifier", word, start, i))
        elif ch in PUNCT:
            i += 1
            toks.append(Token("punct", ch, start, i))
        else:
            for op in OPERATORS:
                if text.startswith(op, i):
                    i += len(op)
                    toks.append(Token("op", op, start, i))
                    break
            else:
                i += 1
                toks.append(Token("unknown", ch, start, i))
        at_line_start = False
    toks.append(Token("eof", "", n, n))
    return toks
