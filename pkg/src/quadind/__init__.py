"""Exact tools for linear independence of squared linear forms."""

from .algebra import (
    InexactDivision,
    Polynomial,
    VarSet,
    VarSetMismatch,
    coeff_extract,
    format_rational,
    parse_polynomial,
    parse_rational,
    rat_arith,
    substitute,
)
from .independence import (
    TwoFormClassification,
    IndependenceReport,
    LinearFormSystem,
    classify_two_forms,
    generic_independent,
    k_products,
    normalize,
    pair_matrix,
    s1_independent,
    sk_independent,
)
from .linalg import RationalMatrix, det, kernel, permanent3, rank

__version__ = "0.1.0"

__all__ = [
    "IndependenceReport",
    "InexactDivision",
    "LinearFormSystem",
    "Polynomial",
    "TwoFormClassification",
    "VarSet",
    "VarSetMismatch",
    "RationalMatrix",
    "det",
    "kernel",
    "permanent3",
    "rank",
    "classify_two_forms",
    "coeff_extract",
    "format_rational",
    "generic_independent",
    "k_products",
    "normalize",
    "pair_matrix",
    "parse_polynomial",
    "parse_rational",
    "rat_arith",
    "s1_independent",
    "sk_independent",
    "substitute",
]
