"""Commutative monoid structures on affine space over Q, as exact polynomial formulas."""

from .exactpoly import DivisionFailure, LaurentPoly, ParseError, Poly, det, divexact

__all__ = ["DivisionFailure", "LaurentPoly", "ParseError", "Poly", "det", "divexact"]
__version__ = "0.1.0"
