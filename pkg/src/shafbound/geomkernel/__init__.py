"""Exact linear algebra, ternary forms and general-position predicates."""

from .forms import TernaryForm, compose, evaluate, monomials, multiply, partial_derivative
from .geometry import (
    STANDARD_FRAME,
    GeneralPosition,
    ProjPointQ,
    apply_matrix,
    collinear,
    conic_determinant,
    det3,
    general_position,
    singular_cubic_exists,
)
from .linalg import (
    RationalMatrix,
    bareiss_det,
    det,
    echelon,
    hermite_normal_form,
    integer_kernel,
    kernel,
    primitive_vector,
    rank,
)

__all__ = [
    "STANDARD_FRAME",
    "GeneralPosition",
    "ProjPointQ",
    "RationalMatrix",
    "TernaryForm",
    "apply_matrix",
    "bareiss_det",
    "collinear",
    "compose",
    "conic_determinant",
    "det",
    "det3",
    "echelon",
    "evaluate",
    "general_position",
    "hermite_normal_form",
    "integer_kernel",
    "kernel",
    "monomials",
    "multiply",
    "partial_derivative",
    "primitive_vector",
    "rank",
    "singular_cubic_exists",
]
