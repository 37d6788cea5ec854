"""Exact polynomial power-sum recurrences, heights, decompositions and degree bounds."""
from .algebra import NEG_INF, AlgebraError, Poly, RatFunc, compose, poly_gcd
from .polyio import ParseError, RecurrenceSpec, SpecError, load_spec, parse_poly, print_poly

__all__ = [
    "NEG_INF", "AlgebraError", "Poly", "RatFunc", "compose", "poly_gcd",
    "ParseError", "RecurrenceSpec", "SpecError", "load_spec", "parse_poly", "print_poly",
]
__version__ = "0.1.0"
