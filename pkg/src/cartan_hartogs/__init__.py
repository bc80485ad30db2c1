"""Exact weighted Bergman kernels and epsilon expansions on Cartan-Hartogs domains."""

from .catalog import DomainKind, DomainSpec, PointCH, make_domain
from .errors import (
    ArityError,
    CartanHartogsError,
    MembershipError,
    ParameterDomainError,
    PreconditionError,
    UnsupportedKindError,
)
from .kernel import KernelParams, bergman_kernel, epsilon, epsilon_coefficients

__all__ = [
    "ArityError",
    "CartanHartogsError",
    "DomainKind",
    "DomainSpec",
    "KernelParams",
    "MembershipError",
    "ParameterDomainError",
    "PointCH",
    "PreconditionError",
    "UnsupportedKindError",
    "bergman_kernel",
    "epsilon",
    "epsilon_coefficients",
    "make_domain",
]

__version__ = "0.1.0"
