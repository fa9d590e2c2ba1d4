"""Map objects to ground Prolog facts and back."""

from ._objlog import (
    ConversionError,
    Entity,
    Error,
    KbError,
    KbIoError,
    KnowledgeBase,
    ParseError,
    Registry,
    SchemaError,
    Term,
    TermError,
    Var,
    from_term,
    parse_program,
    parse_term,
    print_canonical,
    to_term,
    unify,
)

__all__ = [
    "ConversionError",
    "Entity",
    "Error",
    "KbError",
    "KbIoError",
    "KnowledgeBase",
    "ParseError",
    "Registry",
    "SchemaError",
    "Term",
    "TermError",
    "Var",
    "from_term",
    "parse_program",
    "parse_term",
    "print_canonical",
    "to_term",
    "unify",
]
