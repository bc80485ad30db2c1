"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored ascending as :class:`fractions.Fraction`.  The hot
operations (products, linear substitution, evaluation at rationals) clear
denominators and run on Python integers, which keeps degree-60 products
cheap enough for catalog-wide sweeps.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, ``"p/q"`` or decimal strings to a Fraction, exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fraction_to_str(value: Fraction) -> str:
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class RationalPoly:
    """Polynomial in one indeterminate; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike) -> "RationalPoly":
        """``slope * x + intercept``."""
        return cls([intercept, slope])

    @classmethod
    def from_linear_factors(
        cls, factors: Iterable[tuple[RationalLike, RationalLike]]
    ) -> "RationalPoly":
        """Product of ``(slope * x + intercept)`` over ``factors``.

        Denominators are cleared first so the expansion is pure integer work.
        """
        pairs = [(as_fraction(s), as_fraction(c)) for s, c in factors]
        ints = [1]
        den = 1
        for s, c in pairs:
            L = lcm(s.denominator, c.denominator)
            si = s.numerator * (L // s.denominator)
            ci = c.numerator * (L // c.denominator)
            nxt = [0] * (len(ints) + 1)
            for i, v in enumerate(ints):
                nxt[i] += v * ci
                nxt[i + 1] += v * si
            ints = nxt
            den *= L
        return cls._from_ints(ints, den)

    @classmethod
    def _from_ints(cls, ints: Sequence[int], den: int) -> "RationalPoly":
        return cls(Fraction(v, den) for v in ints)

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _cleared(self) -> tuple[list[int], int]:
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        return [c.numerator * (den // c.denominator) for c in self.coeffs], den

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if _is_exact(other):
            return self.coeffs == RationalPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "RationalPoly":
        if _is_exact(other):
            other = RationalPoly([other])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "RationalPoly":
        if _is_exact(other):
            other = RationalPoly([other])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalPoly":
        return (-self) + other

    def __mul__(self, other) -> "RationalPoly":
        if _is_exact(other):
            c = as_fraction(other)
            return RationalPoly(v * c for v in self.coeffs)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        a, da = self._cleared()
        b, db = other._cleared()
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return RationalPoly._from_ints(out, da * db)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RationalPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = RationalPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- substitution and evaluation ---------------------------------------

    def compose_linear(self, slope: RationalLike, intercept: RationalLike) -> "RationalPoly":
        """Return ``f(slope * x + intercept)``."""
        if self.is_zero():
            return RationalPoly()
        s, c = as_fraction(slope), as_fraction(intercept)
        L = lcm(s.denominator, c.denominator)
        A = s.numerator * (L // s.denominator)
        B = c.numerator * (L // c.denominator)
        ints, den = self._cleared()
        n = len(ints) - 1
        # Horner in (A x + B) with the L-powers folded into the coefficients
        acc = [ints[n]]
        Lpow = 1
        for i in range(n - 1, -1, -1):
            Lpow *= L
            nxt = [0] * (len(acc) + 1)
            for k, v in enumerate(acc):
                nxt[k] += v * B
                nxt[k + 1] += v * A
            nxt[0] += ints[i] * Lpow
            acc = nxt
        return RationalPoly._from_ints(acc, den * L**n)

    def shift(self, h: RationalLike) -> "RationalPoly":
        """Return ``f(x + h)``."""
        return self.compose_linear(1, h)

    def __call__(self, x):
        """Evaluate at ``x``; exact for int/Fraction input, Horner otherwise.

        Non-rational arguments (floats, complex numbers, numpy arrays) go
        through plain Horner with float coefficients.
        """
        if not self.coeffs:
            return Fraction(0) if _is_exact(x) else 0 * x
        if _is_exact(x):
            x = as_fraction(x)
            s, t = x.numerator, x.denominator
            ints, den = self._cleared()
            n = len(ints) - 1
            acc = ints[n]
            tpow = 1
            for i in range(n - 1, -1, -1):
                tpow *= t
                acc = acc * s + ints[i] * tpow
            return Fraction(acc, den * t**n)
        acc = float(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    # -- serialization and display -----------------------------------------

    def to_json(self) -> list[str]:
        return [fraction_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[RationalLike]) -> "RationalPoly":
        return cls(data)

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format
