"""Exact computer-algebra kernel: rationals, sparse polynomials, rational functions."""

from .errors import (
    DenominatorVanishes,
    DivisionByZero,
    ExprSyntaxError,
    NegativeExponent,
    SymexprError,
    UnboundVariable,
    UnknownIdentifier,
)
from .parser import VarTable, format_expr, parse_expr
from .poly import Poly
from .ratfn import ONE, ZERO, RatFn, add, as_ratfn, differentiate, evaluate, is_zero, mul, substitute
from .variables import KINDS, Var, base, direction, fiber, make_var, param

__all__ = [
    "KINDS", "Var", "base", "fiber", "direction", "param", "make_var",
    "Poly", "RatFn", "ZERO", "ONE", "add", "mul", "differentiate", "substitute",
    "evaluate", "is_zero", "as_ratfn", "VarTable", "parse_expr", "format_expr",
    "SymexprError", "DivisionByZero", "DenominatorVanishes", "UnboundVariable",
    "ExprSyntaxError", "UnknownIdentifier", "NegativeExponent",
]
