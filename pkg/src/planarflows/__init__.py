"""Flow-generated functions on planar networks over commutative semirings."""

from .semiring import (
    INTEGERS,
    POSITIVE_RATIONALS,
    RATIONALS,
    STAR,
    TROPICAL_INT,
    TROPICAL_RAT,
    fold_product,
    fold_sum,
    polynomial_ring,
    star_extend,
)

__all__ = [
    "INTEGERS",
    "RATIONALS",
    "POSITIVE_RATIONALS",
    "TROPICAL_INT",
    "TROPICAL_RAT",
    "STAR",
    "fold_sum",
    "fold_product",
    "polynomial_ring",
    "star_extend",
]

__version__ = "0.1.0"
