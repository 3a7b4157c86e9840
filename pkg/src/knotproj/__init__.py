"""Reidemeister calculus on knot projections: moves, the W invariant and homotopy search."""

from .core import (
    TRIVIAL,
    GaussCode,
    NotRealizable,
    ParseError,
    ProjectionMap,
    canonical_code,
    connect_sum,
    faces,
    parse_word,
    realize_gauss_code,
    reflect,
    to_gauss_code,
    validate,
)
from .invariants import InvariantReport, invariant_report, is_prime, trivializing_number, w_invariant
from .moves import MoveInstance, MoveKind, apply_move, enumerate_moves, moveset
from .search import SearchConfig, decide, reduce_to_trivial, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "TRIVIAL",
    "GaussCode",
    "InvariantReport",
    "MoveInstance",
    "MoveKind",
    "NotRealizable",
    "ParseError",
    "ProjectionMap",
    "SearchConfig",
    "apply_move",
    "canonical_code",
    "connect_sum",
    "decide",
    "enumerate_moves",
    "faces",
    "invariant_report",
    "is_prime",
    "moveset",
    "parse_word",
    "realize_gauss_code",
    "reduce_to_trivial",
    "reflect",
    "to_gauss_code",
    "trivializing_number",
    "validate",
    "verify_certificate",
    "w_invariant",
]
