"""Exact arithmetic: rationals, finite fields, the cubic radical field, polynomials."""

from .finite import (
    GF,
    ExtField,
    ExtFieldElem,
    PrimeField,
    PrimeFieldElem,
    build_extension_field,
    build_extension_modulus,
    element_order,
    field_of_order,
    is_irreducible,
    primitive_element,
    primitive_nth_root,
)
from .linalg import det_gauss, det_laplace, nullspace, rank, rref
from .numberfield import CubicRadicalField, NumberFieldElem, ZeroDivisorError
from .poly import MultiPoly, gradient, hessian, parse_poly, partial_derivative
from .primes import factorize, is_prime, multiplicative_order, prime_part_removed
from .rational import QQ, icbrt, is_cube_rational, parse_rational

__all__ = [
    "GF", "ExtField", "ExtFieldElem", "PrimeField", "PrimeFieldElem",
    "build_extension_field", "build_extension_modulus", "element_order",
    "field_of_order", "is_irreducible", "primitive_element", "primitive_nth_root",
    "det_gauss", "det_laplace", "nullspace", "rank", "rref",
    "CubicRadicalField", "NumberFieldElem", "ZeroDivisorError",
    "MultiPoly", "gradient", "hessian", "parse_poly", "partial_derivative",
    "factorize", "is_prime", "multiplicative_order", "prime_part_removed",
    "QQ", "icbrt", "is_cube_rational", "parse_rational",
]
