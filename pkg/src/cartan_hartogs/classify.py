"""Constancy of the first two epsilon coefficients across the domain classification."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .algebra.lemmas import c2_tilde, closed_D_first, closed_D_second
from .algebra.poly import RationalLike, as_fraction, fraction_to_str
from .catalog import (
    EXCEPTIONAL,
    DomainKind,
    DomainSpec,
    full_catalog,
    type_i,
    type_ii,
    type_iii,
    type_iv,
)
from .kernel import epsilon_coefficients


def a1_constant_mu(spec: DomainSpec) -> Fraction:
    """The unique ``mu`` making ``a_1`` constant (the Kaehler-Einstein value ``p/(d+1)``)."""
    return Fraction(spec.p, spec.d + 1)


def a2_residual(spec: DomainSpec) -> Fraction:
    """``12(d+1) c2_tilde - (d-1) d (3d+2) p^2``; zero iff the second difference vanishes at ``mu*``."""
    d, p = spec.d, spec.p
    return 12 * (d + 1) * c2_tilde(spec) - (d - 1) * d * (3 * d + 2) * p * p


def factored_residual(spec: DomainSpec) -> Fraction | None:
    """Per-family factored form of :func:`a2_residual`; None for the exceptional domains."""
    kind = spec.kind
    if kind is DomainKind.I:
        m, n = spec.params
        return Fraction(2 * m * n * (m * m - 1) * (n * n - 1))
    if kind is DomainKind.II:
        (size,) = spec.params
        n = size // 2
        if size % 2 == 0:
            return Fraction(4 * n * n * (8 * n**4 - 20 * n**3 + 10 * n * n + 5 * n - 3))
        return Fraction(4 * n * (2 * n - 1) * (2 * n + 1) ** 2 * (n - 1) * (n + 1))
    if kind is DomainKind.III:
        (n,) = spec.params
        return Fraction(n * n * (n**4 + 5 * n**3 + 5 * n * n - 5 * n - 6), 8)
    if kind is DomainKind.IV:
        (n,) = spec.params
        return Fraction(n * (n * n + n - 2))
    return None


# residual / factored form, per family; pinned once derived
FAMILY_FACTOR = {
    DomainKind.I: Fraction(1),
    DomainKind.II: Fraction(1),
    DomainKind.III: Fraction(1),
    DomainKind.IV: Fraction(1),
}


@dataclass(frozen=True)
class ClassificationVerdict:
    spec: DomainSpec
    mu: Fraction
    mu_star: Fraction
    a1_constant_iff_mu: Fraction
    a1_constant: bool
    a2_constant: bool
    residual: Fraction
    hyperbolic: bool
    factored: Fraction | None = field(default=None)

    def to_json(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_json(),
            "label": self.spec.label,
            "mu": fraction_to_str(self.mu),
            "mu_star": fraction_to_str(self.mu_star),
            "a1_constant_iff_mu": fraction_to_str(self.a1_constant_iff_mu),
            "a1_constant": self.a1_constant,
            "a2_constant": self.a2_constant,
            "residual": fraction_to_str(self.residual),
            "factored_residual": None if self.factored is None else fraction_to_str(self.factored),
            "hyperbolic": self.hyperbolic,
        }


def a2_constancy(spec: DomainSpec, mu: RationalLike | None = None) -> ClassificationVerdict:
    """Decide whether ``a_2`` is constant on the Cartan-Hartogs domain at ``mu``.

    ``mu`` defaults to ``p/(d+1)``, the only value at which ``a_1`` (and hence
    ``a_2``) can be constant.  For ``d = 1`` the test is ``mu == 1``; for
    ``d >= 2`` both top differences must vanish, i.e. ``mu = p/(d+1)`` and a
    zero residual.
    """
    mu_star = a1_constant_mu(spec)
    mu = mu_star if mu is None else as_fraction(mu)
    residual = a2_residual(spec)
    a1_const = mu == mu_star
    if spec.d == 1:
        a2_const = mu == 1
    else:
        a2_const = a1_const and residual == 0
    return ClassificationVerdict(
        spec=spec,
        mu=mu,
        mu_star=mu_star,
        a1_constant_iff_mu=mu_star,
        a1_constant=a1_const,
        a2_constant=a2_const,
        residual=residual,
        hyperbolic=spec.r == 1 and mu_star == 1,
        factored=factored_residual(spec),
    )


def a2_constant_by_inspection(spec: DomainSpec, mu: RationalLike, d0: int = 1) -> bool:
    """Cross-check: whether the expanded ``a_2`` has zero degree in ``X``."""
    return epsilon_coefficients(spec, mu, d0).coeffs[2].is_constant()


def top_differences_vanish(spec: DomainSpec, mu: RationalLike) -> bool:
    mu = as_fraction(mu)
    if closed_D_first(spec, mu) != 0:
        return False
    return spec.d < 2 or closed_D_second(spec, mu) == 0


@dataclass(frozen=True)
class SweepRanges:
    """Inclusive parameter ranges per family."""

    type_i_max_n: int = 6
    type_ii: tuple[int, int] = (4, 9)
    type_iii: tuple[int, int] = (2, 6)
    type_iv: tuple[int, int] = (5, 10)
    exceptional: bool = True

    def specs(self) -> list[DomainSpec]:
        out = [type_i(m, n) for n in range(1, self.type_i_max_n + 1) for m in range(1, n + 1)]
        out += [type_ii(n) for n in range(self.type_ii[0], self.type_ii[1] + 1)]
        out += [type_iii(n) for n in range(self.type_iii[0], self.type_iii[1] + 1)]
        out += [type_iv(n) for n in range(self.type_iv[0], self.type_iv[1] + 1)]
        if self.exceptional:
            out += list(EXCEPTIONAL)
        return out


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("CARTAN_HARTOGS_THREADS", "1")))
    except ValueError:
        return 1


def classify_sweep(
    ranges: SweepRanges | Iterable[DomainSpec],
    mu: RationalLike | None = None,
    workers: int | None = None,
) -> list[ClassificationVerdict]:
    """Verdicts for every spec in ``ranges``, in range order whatever the worker count."""
    specs: Sequence[DomainSpec] = ranges.specs() if isinstance(ranges, SweepRanges) else list(ranges)
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        return [a2_constancy(s, mu) for s in specs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: a2_constancy(s, mu), specs))


def default_sweep(max_dim: int, mu: RationalLike | None = None, workers: int | None = None) -> list[ClassificationVerdict]:
    """Sweep every catalog entry of dimension at most ``max_dim``."""
    return classify_sweep(full_catalog(max_dim), mu=mu, workers=workers)
