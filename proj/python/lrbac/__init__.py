"""Role-based access control for a typed lambda calculus."""

from ._core import (
    Error,
    ParseError,
    TypeError,
    canonical_role,
    dominates,
    equiv,
    evaluate,
    run_cli,
    type_of,
)

__all__ = [
    "Error",
    "ParseError",
    "TypeError",
    "canonical_role",
    "dominates",
    "equiv",
    "evaluate",
    "run_cli",
    "type_of",
]
