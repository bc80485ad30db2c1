"""Irreducible bounded symmetric domains: invariants, generic norms, volumes.

Base coordinates are flat vectors.  Matrix domains use a fixed layout:

* type I(m, n): the ``m * n`` entries, row-major;
* type II(n): the strictly upper-triangular entries of an antisymmetric
  ``n x n`` matrix, row by row;
* type III(n): the upper-triangular entries (diagonal included) of a
  symmetric ``n x n`` matrix, row by row;
* type IV(n): the vector itself.

Coordinates may be Python ints/Fractions (real rational points, evaluated
exactly), floats or complex numbers.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .algebra.poly import as_fraction, fraction_to_str
from .algebra.special import hua_poly
from .errors import MembershipError, ParameterDomainError, UnsupportedKindError


class DomainKind(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V16 = "V16"
    VI27 = "VI27"

    @classmethod
    def parse(cls, value: "DomainKind | str") -> "DomainKind":
        if isinstance(value, DomainKind):
            return value
        key = str(value).strip().upper()
        aliases = {"V": "V16", "VI": "VI27", "E6": "V16", "E7": "VI27"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ParameterDomainError(f"unknown domain kind {value!r}") from None


CLASSICAL = (DomainKind.I, DomainKind.II, DomainKind.III, DomainKind.IV)


@dataclass(frozen=True)
class DomainSpec:
    """Kind, size parameters and the derived invariants ``(r, a, b, d, p)``."""

    kind: DomainKind
    params: tuple[int, ...]
    r: int
    a: int
    b: int
    d: int
    p: int

    @property
    def is_classical(self) -> bool:
        return self.kind in CLASSICAL

    @property
    def label(self) -> str:
        if self.params:
            return f"{self.kind.value}({','.join(map(str, self.params))})"
        return self.kind.value

    @property
    def n_coords(self) -> int:
        return self.d

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "params": list(self.params),
            "r": self.r,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "p": self.p,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "DomainSpec":
        return make_domain(data["kind"], tuple(data.get("params", ())))

    def __str__(self) -> str:
        return self.label


def make_domain(kind: DomainKind | str, params: Sequence[int] = ()) -> DomainSpec:
    """Build a :class:`DomainSpec`, checking the kind constraints."""
    kind = DomainKind.parse(kind)
    params = tuple(int(v) for v in params)

    def need(count: int) -> None:
        if len(params) != count:
            raise ParameterDomainError(
                f"type {kind.value} takes {count} parameter(s), got {len(params)}"
            )

    if kind is DomainKind.I:
        need(2)
        m, n = params
        if not 1 <= m <= n:
            raise ParameterDomainError(f"type I(m,n) requires 1 <= m <= n, got m={m}, n={n}")
        r, a, b = m, 2, n - m
    elif kind is DomainKind.II:
        need(1)
        (n,) = params
        if n < 4:
            raise ParameterDomainError(f"type II(n) requires n >= 4, got n={n}")
        r, a, b = n // 2, 4, (0 if n % 2 == 0 else 2)
    elif kind is DomainKind.III:
        need(1)
        (n,) = params
        if n < 2:
            raise ParameterDomainError(f"type III(n) requires n >= 2, got n={n}")
        r, a, b = n, 1, 0
    elif kind is DomainKind.IV:
        need(1)
        (n,) = params
        if n < 5:
            raise ParameterDomainError(f"type IV(n) requires n >= 5, got n={n}")
        r, a, b = 2, n - 2, 0
    elif kind is DomainKind.V16:
        if params not in ((), (16,)):
            raise ParameterDomainError("type V16 takes no parameters")
        params, r, a, b = (), 2, 6, 4
    else:
        if params not in ((), (27,)):
            raise ParameterDomainError("type VI27 takes no parameters")
        params, r, a, b = (), 3, 8, 0
    d = r * (r - 1) // 2 * a + r * b + r
    p = (r - 1) * a + b + 2
    return DomainSpec(kind, params, r, a, b, d, p)


def type_i(m: int, n: int) -> DomainSpec:
    return make_domain(DomainKind.I, (m, n))


def type_ii(n: int) -> DomainSpec:
    return make_domain(DomainKind.II, (n,))


def type_iii(n: int) -> DomainSpec:
    return make_domain(DomainKind.III, (n,))


def type_iv(n: int) -> DomainSpec:
    return make_domain(DomainKind.IV, (n,))


def ball(n: int) -> DomainSpec:
    """The unit ball of C^n, realized as type I(1, n)."""
    return type_i(1, n)


EXCEPTIONAL = (make_domain(DomainKind.V16), make_domain(DomainKind.VI27))


def classical_catalog(max_dim: int) -> list[DomainSpec]:
    """Every classical spec of complex dimension at most ``max_dim``, in a fixed order."""
    out = []
    for m in range(1, max_dim + 1):
        for n in range(m, max_dim // m + 1):
            out.append(type_i(m, n))
    n = 4
    while n * (n - 1) // 2 <= max_dim:
        out.append(type_ii(n))
        n += 1
    n = 2
    while n * (n + 1) // 2 <= max_dim:
        out.append(type_iii(n))
        n += 1
    for n in range(5, max_dim + 1):
        out.append(type_iv(n))
    return out


def full_catalog(max_dim: int) -> list[DomainSpec]:
    return classical_catalog(max_dim) + [s for s in EXCEPTIONAL if s.d <= max_dim]


# ---------------------------------------------------------------------------
# points


def _parse_scalar(value) -> Any:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex coordinates are [re, im] pairs, got {value!r}")
        re, im = (_parse_scalar(v) for v in value)
        if im == 0:
            return re
        return complex(float(re), float(im))
    if isinstance(value, str):
        return as_fraction(value)
    if isinstance(value, bool):
        raise ValueError("boolean coordinate")
    if isinstance(value, (int, Fraction, float, complex)):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    raise ValueError(f"cannot parse coordinate {value!r}")


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _coords(values) -> tuple:
    if isinstance(values, np.ndarray):
        values = values.ravel().tolist()
    return tuple(_parse_scalar(v) for v in values)


@dataclass(frozen=True)
class PointCH:
    """A point ``(z, w)`` of a Cartan-Hartogs domain (base coords, fiber coords)."""

    z: tuple
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "z", _coords(self.z))
        object.__setattr__(self, "w", _coords(self.w))

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(v) for v in self.z + self.w)

    @property
    def d0(self) -> int:
        return len(self.w)

    def wnorm2(self):
        """``||w||^2``; a Fraction for exact points."""
        if self.is_exact:
            return sum((as_fraction(v) ** 2 for v in self.w), Fraction(0))
        return float(sum(abs(complex(v)) ** 2 for v in self.w))

    def to_json(self) -> dict[str, list]:
        def enc(v):
            if _is_exact(v):
                return fraction_to_str(as_fraction(v))
            v = complex(v)
            return [v.real, v.imag] if v.imag else v.real

        return {"z": [enc(v) for v in self.z], "w": [enc(v) for v in self.w]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "PointCH":
        return cls(tuple(data.get("z", ())), tuple(data.get("w", ())))

    @classmethod
    def origin(cls, spec: DomainSpec, d0: int) -> "PointCH":
        return cls((0,) * spec.d, (0,) * d0)


# ---------------------------------------------------------------------------
# generic norm


def _require_classical(spec: DomainSpec) -> None:
    if not spec.is_classical:
        raise UnsupportedKindError(
            f"{spec.label} carries invariants only; no explicit generic norm is available"
        )


def _check_len(spec: DomainSpec, z: Sequence) -> None:
    if len(z) != spec.d:
        raise ValueError(f"{spec.label} needs {spec.d} base coordinates, got {len(z)}")


def base_matrix(spec: DomainSpec, z: Sequence):
    """Matrix realization of flat coordinates (a vector for type IV).

    Exact coordinates give an object array of Fractions, others a complex array.
    """
    _require_classical(spec)
    _check_len(spec, z)
    exact = all(_is_exact(v) for v in z)
    dtype = object if exact else complex
    vals = [as_fraction(v) for v in z] if exact else [complex(v) for v in z]
    zero = Fraction(0) if exact else 0j
    kind = spec.kind
    if kind is DomainKind.IV:
        return np.array(vals, dtype=dtype)
    if kind is DomainKind.I:
        m, n = spec.params
        return np.array(vals, dtype=dtype).reshape(m, n)
    (n,) = spec.params
    mat = np.full((n, n), zero, dtype=dtype)
    it = iter(vals)
    if kind is DomainKind.II:
        for i in range(n):
            for j in range(i + 1, n):
                v = next(it)
                mat[i, j] = v
                mat[j, i] = -v
    else:
        for i in range(n):
            for j in range(i, n):
                v = next(it)
                mat[i, j] = v
                mat[j, i] = v
    return mat


def _det_exact(mat) -> Fraction:
    a = [[as_fraction(v) for v in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def pfaffian(mat):
    """Pfaffian of an antisymmetric matrix by skew Gaussian elimination.

    Works on complex arrays (partial pivoting by modulus) and on object arrays
    of Fractions (first nonzero pivot), where the result is exact.
    """
    if not isinstance(mat, np.ndarray):
        mat = np.array(mat, dtype=object)
    exact = mat.dtype == object and all(_is_exact(v) for v in mat.flat)
    A = np.array(mat, dtype=object if exact else complex, copy=True)
    n = A.shape[0]
    if n % 2:
        return Fraction(0) if A.dtype == object else 0j
    exact = A.dtype == object
    pf = Fraction(1) if exact else 1 + 0j
    for k in range(0, n - 1, 2):
        col = A[k + 1 :, k]
        if exact:
            nz = [i for i, v in enumerate(col) if v != 0]
            if not nz:
                return Fraction(0)
            kp = k + 1 + nz[0]
        else:
            kp = k + 1 + int(np.argmax(np.abs(col)))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0:
            return Fraction(0) if exact else 0j
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2 :] / A[k, k + 1]
            A[k + 2 :, k + 2 :] += np.outer(tau, A[k + 2 :, k + 1]) - np.outer(A[k + 2 :, k + 1], tau)
    return pf


def generic_norm(spec: DomainSpec, z: Sequence, xi: Sequence | None = None):
    """Generic norm ``N(z, conj(xi))``; ``xi`` defaults to ``z``.

    Exact (real rational) coordinates give a Fraction.  Otherwise the diagonal
    value is returned as a float and the polarized value as a complex number.
    Points outside the domain are evaluated anyway; use :func:`in_base_domain`.
    """
    _require_classical(spec)
    diagonal = xi is None
    if diagonal:
        xi = z
    zm = base_matrix(spec, z)
    xm = base_matrix(spec, xi)
    exact = zm.dtype == object and xm.dtype == object
    if not exact:
        zm = zm.astype(complex)
        xm = xm.astype(complex)
    xbar = xm if exact else xm.conj()
    kind = spec.kind
    if kind is DomainKind.IV:
        inner = sum(zm * xbar)
        if exact:
            val = 1 - 2 * inner + sum(zm * zm) * sum(xbar * xbar)
        else:
            val = 1 - 2 * complex(np.sum(zm * xbar)) + complex(np.sum(zm * zm)) * complex(np.sum(xbar * xbar))
    elif kind is DomainKind.II:
        (n,) = spec.params
        if exact:
            eye = np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)
        else:
            eye = np.eye(n, dtype=complex)
        big = np.block([[zm, eye], [-eye, xbar]])
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        val = sign * pfaffian(big)
    else:
        rows = zm.shape[0]
        prod = zm.dot(xbar.T)
        if exact:
            m = [[(1 if i == j else 0) - prod[i, j] for j in range(rows)] for i in range(rows)]
            val = _det_exact(m)
        else:
            val = complex(np.linalg.det(np.eye(rows) - prod))
    if exact:
        return as_fraction(val)
    val = complex(val)
    return val.real if diagonal else val


def generic_norm_batch(spec: DomainSpec, Z: np.ndarray) -> np.ndarray:
    """Diagonal generic norm over a batch of complex coordinate rows, shape ``(N, d)``."""
    _require_classical(spec)
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim != 2 or Z.shape[1] != spec.d:
        raise ValueError(f"expected shape (N, {spec.d})")
    kind = spec.kind
    if kind is DomainKind.IV:
        s = np.sum(np.abs(Z) ** 2, axis=1)
        q = np.abs(np.sum(Z * Z, axis=1)) ** 2
        return 1 - 2 * s + q
    mats = _batch_matrices(spec, Z)
    eye = np.eye(mats.shape[1])
    det = np.linalg.det(eye - mats @ np.conj(np.swapaxes(mats, 1, 2))).real
    if kind is DomainKind.II:
        return np.sqrt(np.clip(det, 0.0, None))
    return det


def _batch_matrices(spec: DomainSpec, Z: np.ndarray) -> np.ndarray:
    N = Z.shape[0]
    if spec.kind is DomainKind.I:
        m, n = spec.params
        return Z.reshape(N, m, n)
    (n,) = spec.params
    mats = np.zeros((N, n, n), dtype=complex)
    iu = np.triu_indices(n, 1 if spec.kind is DomainKind.II else 0)
    mats[:, iu[0], iu[1]] = Z
    if spec.kind is DomainKind.II:
        mats[:, iu[1], iu[0]] = -Z
    else:
        mats[:, iu[1], iu[0]] = Z
    return mats


def in_base_domain_batch(spec: DomainSpec, Z: np.ndarray) -> np.ndarray:
    _require_classical(spec)
    Z = np.asarray(Z, dtype=complex)
    if spec.kind is DomainKind.IV:
        s = np.sum(np.abs(Z) ** 2, axis=1)
        return (s < 1) & (generic_norm_batch(spec, Z) > 0)
    mats = _batch_matrices(spec, Z)
    eye = np.eye(mats.shape[1])
    herm = eye - mats @ np.conj(np.swapaxes(mats, 1, 2))
    return np.linalg.eigvalsh(herm)[:, 0] > 0


def in_base_domain(spec: DomainSpec, z: Sequence) -> bool:
    """Membership of ``z`` in the open base domain."""
    _require_classical(spec)
    _check_len(spec, z)
    row = np.array([[complex(v) for v in z]], dtype=complex)
    return bool(in_base_domain_batch(spec, row)[0])


def _iroot(n: int, k: int) -> int:
    """Floor of the ``k``-th root of a nonnegative integer."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _exact_root(value: Fraction, k: int) -> Fraction | None:
    num, den = _iroot(value.numerator, k), _iroot(value.denominator, k)
    if num**k == value.numerator and den**k == value.denominator:
        return Fraction(num, den)
    return None


def _power(base, exponent):
    """``base ** exponent``, exact whenever the result is rational.

    Rational bases with integral exponents are always exact; fractional
    exponents stay exact when the base is a perfect power.
    """
    exponent = as_fraction(exponent) if _is_exact(exponent) else exponent
    if _is_exact(base) and isinstance(exponent, Fraction):
        base = as_fraction(base)
        if exponent.denominator == 1:
            return base**exponent.numerator
        if base > 0:
            root = _exact_root(base, exponent.denominator)
            if root is not None:
                return root**exponent.numerator
    if isinstance(base, complex):
        return base ** float(exponent)
    return float(base) ** float(exponent)


def fiber_gap(spec: DomainSpec, mu, point: PointCH):
    """``N(z, z)^mu - ||w||^2``; positive exactly on the interior (given z in the base)."""
    n = generic_norm(spec, point.z)
    return _power(n, mu) - point.wnorm2()


def contains(spec: DomainSpec, mu, point: PointCH) -> bool:
    """Whether ``point`` lies in the open Cartan-Hartogs domain over ``spec``."""
    if not in_base_domain(spec, point.z):
        return False
    return fiber_gap(spec, mu, point) > 0


def require_interior(spec: DomainSpec, mu, point: PointCH) -> None:
    _require_classical(spec)
    if not contains(spec, mu, point):
        raise MembershipError(f"point {point.to_json()} is not interior to the {spec.label} Cartan-Hartogs domain")


def c_omega(spec: DomainSpec) -> Fraction:
    """Determinant at 0 of the complex Hessian of ``-log N`` in the flat coordinates."""
    _require_classical(spec)
    kind = spec.kind
    if kind in (DomainKind.I, DomainKind.II):
        return Fraction(1)
    (n,) = spec.params
    if kind is DomainKind.III:
        return Fraction(2 ** (n * (n - 1) // 2))
    return Fraction(2**n)


def volume_coefficient(spec: DomainSpec) -> Fraction:
    """``V(Omega) / pi^d``, an exact rational."""
    return 1 / (c_omega(spec) * hua_poly(spec)(0))


def volume(spec: DomainSpec) -> float:
    """Euclidean volume of the base domain in the flat coordinates."""
    return float(volume_coefficient(spec)) * math.pi**spec.d


def kahler_potential(spec: DomainSpec, mu, point: PointCH) -> float:
    """``-log(N(z, z)^mu - ||w||^2)``."""
    require_interior(spec, mu, point)
    return -math.log(fiber_gap(spec, mu, point))


# ---------------------------------------------------------------------------
# sampling helpers shared by the oracles


def random_interior_point(
    spec: DomainSpec,
    mu,
    d0: int,
    rng: np.random.Generator,
    radius: float = 0.6,
    fiber_fill: float | None = None,
) -> PointCH:
    """A random interior point; the base part has operator norm ``radius * U``."""
    _require_classical(spec)
    while True:
        z = rng.normal(size=spec.d) + 1j * rng.normal(size=spec.d)
        if spec.kind is DomainKind.IV:
            scale = math.sqrt(float(np.sum(np.abs(z) ** 2)))
        else:
            scale = float(np.linalg.norm(_batch_matrices(spec, z[None, :])[0], 2))
        z = z / scale * radius * rng.uniform(0.2, 1.0)
        if not in_base_domain(spec, z):
            continue
        n_mu = generic_norm(spec, z) ** float(mu)
        fill = rng.uniform(0.05, 0.9) if fiber_fill is None else fiber_fill
        w = rng.normal(size=d0) + 1j * rng.normal(size=d0)
        w = w / np.linalg.norm(w) * math.sqrt(fill * n_mu)
        return PointCH(tuple(complex(v) for v in z), tuple(complex(v) for v in w))


def rational_interior_point(
    spec: DomainSpec,
    mu: int,
    d0: int,
    rng: np.random.Generator,
    denominator: int = 16,
) -> PointCH:
    """A random interior point with real rational coordinates (exact evaluation)."""
    _require_classical(spec)
    while True:
        z = tuple(Fraction(int(v), denominator * spec.d) for v in rng.integers(-denominator, denominator + 1, size=spec.d))
        if not in_base_domain(spec, z):
            continue
        cap = _power(generic_norm(spec, z), mu)
        w = tuple(Fraction(int(v), 4 * denominator * d0) for v in rng.integers(-denominator, denominator + 1, size=d0))
        if sum(v * v for v in w) < cap:
            return PointCH(z, w)
