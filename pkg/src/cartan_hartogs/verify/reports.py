"""Check reports and quadrature settings shared by every oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..algebra.poly import fraction_to_str

_SEED_LIMIT = 1 << 64


class Scheme(str, enum.Enum):
    TENSOR_GAUSS = "tensor-gauss"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class QuadratureSpec:
    """``n`` is nodes per axis for tensor rules and the sample count for Monte Carlo."""

    scheme: Scheme = Scheme.TENSOR_GAUSS
    n: int = 40
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("quadrature size must be a positive integer")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @classmethod
    def gauss(cls, n: int = 40) -> "QuadratureSpec":
        return cls(Scheme.TENSOR_GAUSS, n)

    @classmethod
    def monte_carlo(cls, samples: int = 1 << 20, seed: int = 0) -> "QuadratureSpec":
        return cls(Scheme.MONTE_CARLO, samples, seed)


def _encode(value) -> Any:
    if isinstance(value, Fraction):
        return fraction_to_str(value)
    if isinstance(value, complex):
        return [value.real, value.imag] if value.imag else value.real
    if isinstance(value, int):
        return value
    return float(value)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one oracle comparison.

    ``passed`` holds iff ``|observed - expected| <= tolerance * max(1, |expected|)``;
    with Fractions on both sides and zero tolerance that is exact equality.
    """

    name: str
    expected: Any
    observed: Any
    tolerance: float
    passed: bool
    detail: str = ""

    @classmethod
    def compare(cls, name: str, expected, observed, tolerance: float, detail: str = "") -> "CheckReport":
        exact = isinstance(expected, (int, Fraction)) and isinstance(observed, (int, Fraction))
        if exact:
            tol = Fraction(tolerance)
            passed = abs(observed - expected) <= tol * max(1, abs(expected))
        else:
            err = abs(complex(observed) - complex(expected))
            passed = bool(err <= tolerance * max(1.0, abs(complex(expected))))
        return cls(name, expected, observed, float(tolerance), passed, detail)

    @property
    def error(self) -> float:
        return abs(complex(self.observed) - complex(self.expected))

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "expected": _encode(self.expected),
            "observed": _encode(self.observed),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }
