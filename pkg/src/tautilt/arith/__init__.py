"""Exact arithmetic: finite fields, polynomials, linear algebra, quadratic forms."""
from .fields import GF, QQ, FiniteField, Rationals, splitting_field_for
from .poly import factor_univariate
from .quadratic import (
    Definiteness,
    Signature,
    SymmetricIntegerMatrix,
    classify_definiteness,
    isotropic_or_negative_integer_vector,
    signature,
)

__all__ = [
    "GF", "QQ", "FiniteField", "Rationals", "splitting_field_for", "factor_univariate",
    "Definiteness", "Signature", "SymmetricIntegerMatrix", "classify_definiteness",
    "isotropic_or_negative_integer_vector", "signature",
]
