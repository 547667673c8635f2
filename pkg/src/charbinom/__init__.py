"""Differential and boomerang analysis of ``F_r(x) = x^r (1 + chi(x))`` over GF(3^n).

The field layer builds log/antilog tables once per ``(p, n, modulus)``;
everything else works on integer element ids.
"""

from .errors import CharbinomError, DomainError, InvariantViolation, ModulusError, ResourceCapError
from .field import FieldCtx, build_field
from .funcs import BINOMIAL, POWER, FuncTable, exponent_class, tabulate

__version__ = "0.1.0"

__all__ = [
    "BINOMIAL", "POWER", "CharbinomError", "DomainError", "FieldCtx", "FuncTable",
    "InvariantViolation", "ModulusError", "ResourceCapError", "build_field", "exponent_class",
    "tabulate",
]
