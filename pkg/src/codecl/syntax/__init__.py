from .tree import (
    COMMENT_KINDS,
    FUNCTION_KINDS,
    HEADER_KINDS,
    STATEMENT_KINDS,
    Node,
    NodeRef,
    SyntaxTree,
)
from .parser import parse_text
from .edits import Edit, apply_edits

__all__ = [
    "COMMENT_KINDS",
    "FUNCTION_KINDS",
    "HEADER_KINDS",
    "STATEMENT_KINDS",
    "Node",
    "NodeRef",
    "SyntaxTree",
    "parse_text",
    "Edit",
    "apply_edits",
]
