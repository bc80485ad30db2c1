"""Exact rational polynomial algebra, partitions and Hua-polynomial identities."""

from .lemmas import (
    c2_tilde,
    closed_A,
    closed_AB,
    closed_B,
    closed_c0c1c2,
    closed_D_first,
    closed_D_second,
    closed_D_values,
)
from .partitions import Partition, partitions
from .poly import RationalPoly, as_fraction, fraction_to_str
from .special import (
    alpha_expansion_coeffs,
    chi_tilde,
    difference,
    finite_difference,
    hua_poly,
    pochhammer_partition,
    raising_factorial,
    rising,
    scaled_differences,
)

__all__ = [
    "Partition",
    "RationalPoly",
    "alpha_expansion_coeffs",
    "as_fraction",
    "c2_tilde",
    "chi_tilde",
    "closed_A",
    "closed_AB",
    "closed_B",
    "closed_D_first",
    "closed_D_second",
    "closed_D_values",
    "closed_c0c1c2",
    "difference",
    "finite_difference",
    "fraction_to_str",
    "hua_poly",
    "partitions",
    "pochhammer_partition",
    "raising_factorial",
    "rising",
    "scaled_differences",
]
