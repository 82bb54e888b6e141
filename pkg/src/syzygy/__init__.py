"""Exact computational toolkit for graded Betti tables of projective varieties."""

from .fields import DEFAULT_PRIME, QQ, PrimeField, RationalField, field_from_token
from .polys import GREVLEX, LEX, BlockOrder, Polynomial, Ring

__all__ = [
    "DEFAULT_PRIME",
    "QQ",
    "PrimeField",
    "RationalField",
    "field_from_token",
    "GREVLEX",
    "LEX",
    "BlockOrder",
    "Polynomial",
    "Ring",
]
