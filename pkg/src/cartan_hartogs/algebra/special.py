"""Raising factorials, Hua polynomials and backward differences, all exact."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .partitions import Partition
from .poly import RationalLike, RationalPoly, as_fraction


def raising_factorial(shift: RationalLike, m: int) -> RationalPoly:
    """``(x + shift)_m = prod_{i<m} (x + shift + i)`` as a polynomial in ``x``."""
    if m < 0:
        raise ValueError("raising factorial length must be nonnegative")
    s = as_fraction(shift)
    return RationalPoly.from_linear_factors((1, s + i) for i in range(m))


def rising(s: RationalLike, m: int) -> Fraction:
    """Numeric raising factorial ``(s)_m``."""
    s = as_fraction(s)
    out = Fraction(1)
    for i in range(m):
        out *= s + i
    return out


def pochhammer_partition(s: RationalLike, lam: Partition | tuple[int, ...], a: int) -> Fraction:
    """Generalized Pochhammer symbol ``prod_j (s - (j-1) a/2)_{lam_j}``."""
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    s = as_fraction(s)
    half_a = Fraction(a, 2)
    out = Fraction(1)
    for j, part in enumerate(lam.parts):
        out *= rising(s - j * half_a, part)
    return out


def _hua_factors(spec) -> list[tuple[Fraction, int]]:
    half_a = Fraction(spec.a, 2)
    return [
        (1 + (j - 1) * half_a, 1 + spec.b + (spec.r - j) * spec.a)
        for j in range(1, spec.r + 1)
    ]


@lru_cache(maxsize=512)
def hua_poly(spec) -> RationalPoly:
    """Hua polynomial in ``s``: monic, degree ``spec.d``.

    Only the invariants ``r, a, b`` are read, so exceptional domains work too.
    """
    linear = []
    for shift, length in _hua_factors(spec):
        linear.extend((1, shift + i) for i in range(length))
    return RationalPoly.from_linear_factors(linear)


@lru_cache(maxsize=2048)
def chi_tilde(spec, mu: RationalLike) -> RationalPoly:
    """``x -> hua(mu * x - p)``; degree ``d`` with leading coefficient ``mu**d``."""
    return hua_poly(spec).compose_linear(as_fraction(mu), -spec.p)


def finite_difference(f: RationalPoly, k: int, x0: RationalLike) -> Fraction:
    """Backward difference ``sum_j C(k,j) (-1)^j f(x0 - j)``, exact."""
    if k < 0:
        raise ValueError("difference order must be nonnegative")
    x0 = as_fraction(x0)
    total = Fraction(0)
    for j in range(k + 1):
        term = comb(k, j) * f(x0 - j)
        total += -term if j & 1 else term
    return total


def difference(f: RationalPoly, k: int = 1) -> RationalPoly:
    """``D^k f`` as a polynomial, built from the alternating binomial sum of shifts."""
    if k < 0:
        raise ValueError("difference order must be nonnegative")
    out = RationalPoly()
    for j in range(k + 1):
        term = f.shift(-j) * comb(k, j)
        out = out - term if j & 1 else out + term
    return out


def _difference_repeated(f: RationalPoly, k: int) -> RationalPoly:
    # cross-check path: k-fold application of f(x) - f(x-1)
    for _ in range(k):
        f = f - f.shift(-1)
    return f


@lru_cache(maxsize=2048)
def scaled_differences(spec, mu: RationalLike) -> tuple[Fraction, ...]:
    """``D^k chi_tilde(d) / k!`` for ``k = 0..d``."""
    ct = chi_tilde(spec, as_fraction(mu))
    d = spec.d
    values = [ct(d - j) for j in range(d + 1)]
    out = []
    for k in range(d + 1):
        acc = Fraction(0)
        for j in range(k + 1):
            term = comb(k, j) * values[j]
            acc += -term if j & 1 else term
        out.append(acc / factorial(k))
    return tuple(out)


def alpha_expansion_coeffs(d: int, d0: int, k: int) -> list[Fraction]:
    """Coefficients in ``alpha`` (ascending) of ``(alpha - d - d0)_{d0 + k}``."""
    if k < 0 or k > d:
        raise ValueError("need 0 <= k <= d")
    poly = raising_factorial(-(d + d0), d0 + k)
    return [poly.coeff(j) for j in range(d0 + k + 1)]
