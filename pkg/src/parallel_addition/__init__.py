"""Carry-free parallel addition in algebraic bases and in Fibonacci numeration."""

from .digits import Alphabet, DigitString, format_digits, parse
from .golden import add_III, alg_A, alg_B, fib_add, fib_value, zeckendorf
from .numberfield import AlgebraicBase, FieldElement, eval_digits, make_base
from .paradd import (ZeroRep, add_I, add_II, avizienis_add, chow_robertson_add, derive_params_I,
                     derive_params_II, locality_of, make_zero_rep)
from .polysearch import check_unit_circle, find_t_polynomial, to_zero_rep

__all__ = [
    "Alphabet", "DigitString", "format_digits", "parse",
    "add_III", "alg_A", "alg_B", "fib_add", "fib_value", "zeckendorf",
    "AlgebraicBase", "FieldElement", "eval_digits", "make_base",
    "ZeroRep", "add_I", "add_II", "avizienis_add", "chow_robertson_add", "derive_params_I",
    "derive_params_II", "locality_of", "make_zero_rep",
    "check_unit_circle", "find_t_polynomial", "to_zero_rep",
]
