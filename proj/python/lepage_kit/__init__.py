"""Exact variational bicomplex calculus: DSL parsing, forms and the lepage-kit commands."""

from ._core import (
    SCHEMA,
    Form,
    Lagrangian,
    LepageError,
    ParseError,
    Problem,
    appendix_a,
    parse_problem,
    run,
)

__all__ = [
    "SCHEMA",
    "Form",
    "Lagrangian",
    "LepageError",
    "ParseError",
    "Problem",
    "appendix_a",
    "parse_problem",
    "run",
]
