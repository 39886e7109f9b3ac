"""Exact verification tools for logarithmic tangent sheaves of hypersurfaces."""
from __future__ import annotations

from .field import GF31, QQ, FieldSpec
from .poly import Polynomial, differentiate, evaluate, format_polynomial, graded_basis, parse_polynomial

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "GF31", "QQ", "Polynomial", "differentiate", "evaluate", "format_polynomial",
    "graded_basis", "parse_polynomial",
]
