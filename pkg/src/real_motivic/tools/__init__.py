"""Exact engine modules: rings, classes, polynomials, polyhedra, zeta functions and topology."""

from .laurent_ring import LaurentPoly, parse_laurent
from .motivic_classes import MotivicClass, MotivicContext, parse_class
from .polynomial import MultiPoly, parse_poly

__all__ = [
    "LaurentPoly",
    "MotivicClass",
    "MotivicContext",
    "MultiPoly",
    "parse_class",
    "parse_laurent",
    "parse_poly",
]
