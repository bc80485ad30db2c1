"""Independent numerical and series oracles for the closed forms."""

from .checks import (
    brute_force_epsilon,
    c_omega_check,
    complex_hessian,
    fk_partial_sum,
    fk_rank1_check,
    hessian_check,
    hua_integral_check,
    monomial_norms,
    operator_identity_check,
    partition_identity_check,
    reproducing_check,
)
from .reports import CheckReport, QuadratureSpec, Scheme
from .suite import SUITES, run_suite, suite_names

__all__ = [
    "CheckReport",
    "QuadratureSpec",
    "SUITES",
    "Scheme",
    "brute_force_epsilon",
    "c_omega_check",
    "complex_hessian",
    "fk_partial_sum",
    "fk_rank1_check",
    "hessian_check",
    "hua_integral_check",
    "monomial_norms",
    "operator_identity_check",
    "partition_identity_check",
    "reproducing_check",
    "run_suite",
    "suite_names",
]
