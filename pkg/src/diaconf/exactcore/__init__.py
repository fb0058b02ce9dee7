"""Exact rational arithmetic, sparse polynomials and linear algebra."""
from fractions import Fraction as Rat

from .linalg import (
    EchelonBasis,
    QMatrix,
    Subspace,
    commutator,
    identity,
    is_nilpotent,
    is_zero_matrix,
    matmul,
    matvec,
    nullspace,
    qmatrix,
    rank,
    rref,
    rref_pivots,
    solve,
    subspace_closure,
    transpose,
    zeros,
)
from .poly import (
    BUILTIN_SYMBOLS,
    Poly,
    declare,
    format_poly,
    format_rational,
    parse_poly,
    parse_rational,
    poly,
    substitute,
)

__all__ = [
    "Rat", "Poly", "QMatrix", "Subspace", "EchelonBasis", "BUILTIN_SYMBOLS",
    "commutator", "declare", "format_poly", "format_rational", "identity",
    "is_nilpotent", "is_zero_matrix", "matmul", "matvec", "nullspace", "parse_poly",
    "parse_rational", "poly", "qmatrix", "rank", "rref", "rref_pivots", "solve",
    "subspace_closure", "substitute", "transpose", "zeros",
]
