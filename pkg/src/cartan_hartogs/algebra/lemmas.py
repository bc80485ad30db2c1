"""Closed forms for the leading coefficients and top differences of ``chi_tilde``.

Each function here has a brute-force twin in :mod:`.special` (expansion or
explicit differences); the test-suite asserts they agree with zero tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..errors import ArityError
from .poly import RationalLike, RationalPoly, as_fraction


def c2_tilde(spec) -> Fraction:
    """Bracketed invariant polynomial in ``(r, a, d, p)`` shared by ``c_2`` and ``D^{d-2}``."""
    r, a, d, p = spec.r, spec.a, spec.d, spec.p
    return (
        Fraction(d * d * p * p, 4)
        - Fraction(r * (p - 1) * p * (2 * p - 1), 6)
        + Fraction(r * (r - 1) * a * (3 * p * p - 3 * p + 1), 12)
        - Fraction((r - 1) * r * (2 * r - 1) * a * a * (p - 1), 24)
        + Fraction(r * r * (r - 1) ** 2 * a**3, 48)
    )


def closed_c0c1c2(spec, mu: RationalLike, include_c2: bool = True) -> tuple[Fraction, ...]:
    """Coefficients of ``x^d``, ``x^(d-1)`` and (if ``include_c2``) ``x^(d-2)`` of ``chi_tilde``.

    Raises ArityError when ``c_2`` is requested for ``d < 2``.
    """
    mu = as_fraction(mu)
    d, p = spec.d, spec.p
    c0 = mu**d
    c1 = -Fraction(1, 2) * mu ** (d - 1) * d * p
    if not include_c2:
        return c0, c1
    if d < 2:
        raise ArityError(f"c2 needs d >= 2, got d = {d}")
    c2 = Fraction(1, 2) * mu ** (d - 2) * c2_tilde(spec)
    return c0, c1, c2


def closed_A(d: int) -> RationalPoly:
    """``D^{d-1} x^d = (d!/2)(2x - d + 1)``."""
    if d < 1:
        raise ArityError(f"A_d needs d >= 1, got {d}")
    return RationalPoly([-(d - 1), 2]) * Fraction(factorial(d), 2)


def closed_B(d: int) -> RationalPoly:
    """``D^{d-2} x^d = (d!/24)(12x^2 - 12(d-2)x + 3d^2 - 11d + 10)``."""
    if d < 2:
        raise ArityError(f"B_d needs d >= 2, got {d}")
    return RationalPoly([3 * d * d - 11 * d + 10, -12 * (d - 2), 12]) * Fraction(factorial(d), 24)


def closed_AB(d: int) -> tuple[RationalPoly, RationalPoly | None]:
    """``(A_d, B_d)``; ``B_1`` is undefined and returned as None."""
    return closed_A(d), (closed_B(d) if d >= 2 else None)


def closed_D_first(spec, mu: RationalLike) -> Fraction:
    """``D^{d-1} chi_tilde(d) / (d-1)! = (d mu^{d-1} / 2)(mu (d+1) - p)``."""
    mu = as_fraction(mu)
    d, p = spec.d, spec.p
    if d < 1:
        raise ArityError("d must be positive")
    return Fraction(d, 2) * mu ** (d - 1) * (mu * (d + 1) - p)


def closed_D_second(spec, mu: RationalLike) -> Fraction:
    """``D^{d-2} chi_tilde(d) / (d-2)!`` via the ``c2_tilde`` invariant."""
    mu = as_fraction(mu)
    d, p = spec.d, spec.p
    if d < 2:
        raise ArityError(f"second difference value needs d >= 2, got d = {d}")
    quad = Fraction((d - 1) * d * (d + 1) * (3 * d + 10), 24) * mu * mu
    lin = Fraction(p * (d - 1) * d * (d + 2), 4) * mu
    return mu ** (d - 2) * (quad - lin + c2_tilde(spec) / 2)


def closed_D_values(spec, mu: RationalLike) -> tuple[Fraction, Fraction]:
    """Both top scaled differences of ``chi_tilde`` at ``x = d``."""
    return closed_D_first(spec, mu), closed_D_second(spec, mu)
