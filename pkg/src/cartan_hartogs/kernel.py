"""Weighted Bergman kernels and epsilon-function expansions on Cartan-Hartogs domains.

Everything here depends on a point ``(z, w)`` only through ``N(z, z)`` and
``||w||^2``, and mostly only through the fiber ratio
``X = 1 - ||w||^2 / N(z, z)^mu``.  With rational ``N``, ``||w||^2`` and
integral exponents every value is returned as an exact Fraction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .algebra.lemmas import closed_D_first, closed_D_second
from .algebra.poly import RationalLike, RationalPoly, as_fraction, fraction_to_str
from .algebra.special import alpha_expansion_coeffs, hua_poly, rising, scaled_differences
from .catalog import (
    DomainSpec,
    PointCH,
    _power,
    c_omega,
    generic_norm,
    require_interior,
    volume,
)


class InadmissibleWeightWarning(UserWarning):
    """The weight is at or below ``max(d + d0, (p - 1)/mu)``; values are algebraic only."""


@dataclass(frozen=True)
class KernelParams:
    spec: DomainSpec
    mu: Fraction
    d0: int
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", as_fraction(self.mu))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if int(self.d0) != self.d0 or self.d0 < 1:
            raise ValueError("d0 must be a positive integer")

    @property
    def n(self) -> int:
        return self.spec.d + self.d0

    @property
    def threshold(self) -> Fraction:
        return max(Fraction(self.n), Fraction(self.spec.p - 1) / self.mu)

    @property
    def admissible(self) -> bool:
        return self.alpha > self.threshold


def _warn_inadmissible(params: KernelParams) -> None:
    if not params.admissible:
        warnings.warn(
            f"alpha = {params.alpha} does not exceed {params.threshold}; "
            "the weighted space is not the one the kernel formula describes",
            InadmissibleWeightWarning,
            stacklevel=3,
        )


def _pow(base, exponent):
    if isinstance(base, np.ndarray):
        return base ** float(exponent)
    return _power(base, exponent)


def fiber_ratio(spec: DomainSpec, mu, point: PointCH):
    """``X = 1 - ||w||^2 / N(z, z)^mu``, in ``(0, 1]`` on the interior."""
    return 1 - point.wnorm2() / _power(generic_norm(spec, point.z), mu)


def metric_det(params: KernelParams, point: PointCH):
    """Determinant of the complex Hessian of the potential at ``point``."""
    spec, mu = params.spec, params.mu
    require_interior(spec, mu, point)
    N = generic_norm(spec, point.z)
    gap = _power(N, mu) - point.wnorm2()
    d = spec.d
    num = mu**d * c_omega(spec) * _power(N, mu * (d + 1) - spec.p)
    return num / _power(gap, params.n + 1)


def kernel_from_values(params: KernelParams, N, pairing):
    """Kernel value given ``N(z, conj(xi))`` and the fiber pairing ``<w, w'>``.

    Works on Fractions, floats, complex numbers and numpy arrays alike.
    """
    spec, mu, d0, alpha = params.spec, params.mu, params.d0, params.alpha
    d = spec.d
    D = scaled_differences(spec, mu)
    X = 1 - pairing / _pow(N, mu)
    total = 0
    for k in range(d + 1):
        if D[k] == 0:
            continue
        coeff = D[k] * rising(alpha - d - d0, k + d0)
        if isinstance(X, np.ndarray) or not isinstance(coeff, Fraction) or not isinstance(X, Fraction):
            coeff = float(coeff)
        total = total + coeff * _pow(X, -(alpha - d + k))
    scale = Fraction(1) / mu**d
    if not isinstance(total, Fraction):
        scale = float(scale)
    return scale * _pow(N, -mu * alpha) * total


def bergman_kernel(params: KernelParams, point: PointCH, point2: PointCH | None = None):
    """``K_alpha((z, w), conj((z', w')))``; diagonal when ``point2`` is omitted.

    The polarized value uses ``N(z, conj(z'))`` and ``sum_i w_i conj(w'_i)``
    with principal-branch powers.
    """
    spec, mu = params.spec, params.mu
    _warn_inadmissible(params)
    require_interior(spec, mu, point)
    if point2 is None:
        return kernel_from_values(params, generic_norm(spec, point.z), point.wnorm2())
    require_interior(spec, mu, point2)
    N = generic_norm(spec, point.z, point2.z)
    if point.is_exact and point2.is_exact:
        pairing = sum((as_fraction(a) * as_fraction(b) for a, b in zip(point.w, point2.w)), Fraction(0))
    else:
        pairing = sum(complex(a) * complex(b).conjugate() for a, b in zip(point.w, point2.w))
        N = complex(N)
    return kernel_from_values(params, N, pairing)


def bergman_kernel_series(params: KernelParams, point: PointCH, tol: float = 1e-17) -> float:
    """Diagonal kernel from the un-simplified operator form, as a power series in ``t``.

    Cross-check path: explicit volumes and Hua normalizations, and the
    operator ``hua(mu (alpha + t d/dt) - p)`` applied term-by-term to the
    binomial series of ``(1 - t y)^{-(alpha - d)}``.  Float arithmetic.
    """
    spec, mu, d0, alpha = params.spec, params.mu, params.d0, params.alpha
    require_interior(spec, mu, point)
    d, p, n = spec.d, spec.p, params.n
    N = float(generic_norm(spec, point.z))
    y = float(point.wnorm2()) / N ** float(mu)
    chi1 = hua_poly(spec)
    chi2 = RationalPoly.from_linear_factors((1, 1 + i) for i in range(d0))
    vol_ball = math.pi**d0 / float(chi2(0))
    c = (
        math.pi**n
        * float(chi2(alpha - n - 1))
        / (float(mu) ** d * float(c_omega(spec)) * float(chi1(0)) * float(chi2(0)) * volume(spec) * vol_ball)
    )
    s = float(alpha - d)
    total = 0.0
    binom = 1.0  # (s)_m y^m / m!
    m = 0
    while True:
        term = float(chi1(mu * (alpha + m) - p)) * binom
        total += term
        if m > 10 and abs(term) < tol * abs(total):
            break
        binom *= (s + m) * y / (m + 1)
        m += 1
        if m > 100000:
            raise RuntimeError("kernel series failed to converge")
    return c * N ** (-float(mu * alpha)) * total


def epsilon_at(spec: DomainSpec, mu: RationalLike, d0: int, alpha: RationalLike, X):
    """Epsilon function as a function of the fiber ratio ``X``; exact for rational input."""
    mu = as_fraction(mu)
    alpha = as_fraction(alpha)
    d = spec.d
    D = scaled_differences(spec, mu)
    exact = isinstance(X, (int, Fraction))
    total = Fraction(0) if exact else 0.0
    for k in range(d + 1):
        if D[k] == 0:
            continue
        coeff = D[k] * rising(alpha - d - d0, k + d0)
        total += (coeff if exact else float(coeff)) * X ** (d - k)
    return total / mu**d if exact else total / float(mu) ** d


def epsilon(params: KernelParams, point: PointCH):
    """Rawnsley epsilon function ``exp(-alpha Phi) K_alpha`` at ``point``."""
    _warn_inadmissible(params)
    require_interior(params.spec, params.mu, point)
    X = fiber_ratio(params.spec, params.mu, point)
    return epsilon_at(params.spec, params.mu, params.d0, params.alpha, X)


@dataclass(frozen=True)
class EpsilonExpansion:
    """Coefficients ``a_j`` (polynomials in ``X``) of ``eps = sum_j a_j alpha^(d+d0-j)``."""

    mu: Fraction
    d0: int
    coeffs: tuple[RationalPoly, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, alpha, X):
        alpha = as_fraction(alpha) if isinstance(alpha, (int, Fraction, str)) else alpha
        n = self.n
        return sum(a(X) * alpha ** (n - j) for j, a in enumerate(self.coeffs))

    def to_json(self) -> dict[str, Any]:
        return {
            "mu": fraction_to_str(self.mu),
            "d0": self.d0,
            "coeffs": [a.to_json() for a in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "EpsilonExpansion":
        return cls(
            as_fraction(data["mu"]),
            int(data["d0"]),
            tuple(RationalPoly.from_json(c) for c in data["coeffs"]),
        )


def epsilon_coefficients(spec: DomainSpec, mu: RationalLike, d0: int) -> EpsilonExpansion:
    """All expansion coefficients ``a_0 .. a_{d+d0}`` as exact polynomials in ``X``."""
    mu = as_fraction(mu)
    d = spec.d
    n = d + d0
    D = scaled_differences(spec, mu)
    inv = 1 / mu**d
    coeffs = []
    for j in range(n + 1):
        poly = [Fraction(0)] * (d + 1)
        for k in range(max(d - j, 0), d + 1):
            c = alpha_expansion_coeffs(d, d0, k)
            if n - j < len(c):
                poly[d - k] += c[n - j] * inv * D[k]
        coeffs.append(RationalPoly(poly))
    return EpsilonExpansion(mu, d0, tuple(coeffs))


def a1_a2_closed(spec: DomainSpec, mu: RationalLike, d0: int) -> tuple[RationalPoly, RationalPoly]:
    """Closed forms of ``a_1`` and ``a_2`` in ``X`` (separate branch for ``d = 1``)."""
    mu = as_fraction(mu)
    d = spec.d
    n = d + d0
    tri = Fraction(n * (n + 1), 2)
    top = closed_D_first(spec, mu) / mu**d
    a1 = RationalPoly([-tri, top])
    if d >= 2:
        second = closed_D_second(spec, mu) / mu**d
        const = Fraction((n - 1) * n * (n + 1) * (3 * n + 2), 24)
        a2 = RationalPoly([const, -top * (tri - 1), second])
    else:
        lin = -(mu - 1) / mu * (Fraction((1 + d0) * (2 + d0), 2) - 1)
        const = Fraction(d0 * (d0 + 1) * (d0 + 2) * (3 * d0 + 5), 24)
        a2 = RationalPoly([const, lin])
    return a1, a2


def expansion_table(spec: DomainSpec, mu: RationalLike, d0: int) -> list[dict[str, Any]]:
    """Rows ``{j, a_j}`` suitable for display."""
    exp = epsilon_coefficients(spec, mu, d0)
    return [{"j": j, "a_j": a.format("X")} for j, a in enumerate(exp.coeffs)]

