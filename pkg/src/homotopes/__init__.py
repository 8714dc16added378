"""Exact computations with homotopes of finite-dimensional algebras.

Algebras are given by structure constants over Q or F_p. The package builds
homotopes and augmented homotopes, decides when ``A delta A = A`` and, by an
independent route, whether the augmentation ideal of the augmented homotope
is projective, and checks the surrounding structure (radicals, blocks,
recollement functors, fiber-product gluing, generic tensors).
"""
from .linalg import GF, QQ, FieldSpec, Matrix
from .algebra import (LEFT, RIGHT, Algebra, AlgebraMorphism, BlockData, Element, augmented_homotope,
                      direct_sum, dual_numbers, field_algebra, find_unit, homotope, is_associative,
                      is_well_tempered_criterion, matrix_algebra, multiply, parse_element,
                      polynomial_algebra, principal_two_sided_ideal, psi_morphisms, quotient,
                      random_test_algebra, upper_triangular)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "FieldSpec", "Matrix", "LEFT", "RIGHT", "Algebra", "AlgebraMorphism", "BlockData",
    "Element", "augmented_homotope", "direct_sum", "dual_numbers", "field_algebra", "find_unit",
    "homotope", "is_associative", "is_well_tempered_criterion", "matrix_algebra", "multiply",
    "parse_element", "polynomial_algebra", "principal_two_sided_ideal", "psi_morphisms", "quotient",
    "random_test_algebra", "upper_triangular", "__version__",
]
