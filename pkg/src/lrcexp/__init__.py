"""Locally repairable codes from local expansions of functions at a rational place."""

from .builder import (
    LrcCode,
    build_code_prime_field,
    build_code_rational_places,
    build_matrix_A,
    default_alphas,
    reduce_function,
)
from .curves import HermitianBackend, Place, RationalBackend, make_backend
from .galois import FieldCtx, FieldElement, make_field

__all__ = [
    "FieldCtx",
    "FieldElement",
    "HermitianBackend",
    "LrcCode",
    "Place",
    "RationalBackend",
    "build_code_prime_field",
    "build_code_rational_places",
    "build_matrix_A",
    "default_alphas",
    "make_backend",
    "make_field",
    "reduce_function",
]
