"""Exact tools for the non-spectral problem of planar self-affine measures."""

__version__ = "0.1.0"

from .classify import (
    Classification,
    MatrixClass,
    ResidueVector,
    classify,
    gl2_enumerate,
    is_expanding,
    lift_expanding,
    orbit_union,
    p_tilde,
    step_map,
)
from .exact import IntMatrix2, IntPolynomial, RationalPoint, cyclotomic_poly, roots_of_unity_sum_is_zero
from .mask import (
    SIERPINSKI,
    DigitSet,
    check_hypothesis,
    mask_is_zero,
    minkowski_sum,
    safe_radius,
    zeros_four_digit,
    zeros_in_Ep,
    zeros_three_digit,
)
from .ortho import (
    construct_lambda,
    construct_small_lambda,
    diffset_cover_check,
    is_orthogonal_set,
    max_clique_orthogonal,
    zero_set_member,
)

__all__ = [
    "check_hypothesis",
    "Classification",
    "classify",
    "construct_lambda",
    "construct_small_lambda",
    "cyclotomic_poly",
    "diffset_cover_check",
    "DigitSet",
    "gl2_enumerate",
    "IntMatrix2",
    "IntPolynomial",
    "is_expanding",
    "is_orthogonal_set",
    "lift_expanding",
    "mask_is_zero",
    "MatrixClass",
    "max_clique_orthogonal",
    "minkowski_sum",
    "orbit_union",
    "p_tilde",
    "RationalPoint",
    "ResidueVector",
    "roots_of_unity_sum_is_zero",
    "safe_radius",
    "SIERPINSKI",
    "step_map",
    "zero_set_member",
    "zeros_four_digit",
    "zeros_in_Ep",
    "zeros_three_digit",
]
