"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (a summary section lists one
PASS/FAIL line per criterion) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from cartan_hartogs.algebra.lemmas import closed_A, closed_B, closed_c0c1c2, closed_D_first, closed_D_values
from cartan_hartogs.algebra.poly import RationalPoly
from cartan_hartogs.algebra.special import chi_tilde, difference, finite_difference
from cartan_hartogs.catalog import (
    PointCH,
    classical_catalog,
    full_catalog,
    random_interior_point,
    rational_interior_point,
    type_i,
    type_iv,
)
from cartan_hartogs.classify import SweepRanges, a1_constant_mu, classify_sweep
from cartan_hartogs.kernel import KernelParams, a1_a2_closed, epsilon, epsilon_at, epsilon_coefficients
from cartan_hartogs.verify import (
    brute_force_epsilon,
    c_omega_check,
    fk_rank1_check,
    hessian_check,
    hua_integral_check,
    operator_identity_check,
    partition_identity_check,
)
from cartan_hartogs.verify.suite import epsilon_points

DISK = type_i(1, 1)


def _mus(spec):
    return {Fraction(1, 2), Fraction(1), Fraction(4, 5), a1_constant_mu(spec)}


@pytest.fixture
def criterion(record_property):
    def mark(number: int, title: str):
        record_property("criterion", (number, title))

    return mark


def test_criterion_01_difference_closed_forms(criterion):
    criterion(1, "closed top differences equal direct differences, d <= 60")
    start = time.perf_counter()
    checked = 0
    for spec in classical_catalog(60):
        d = spec.d
        for mu in _mus(spec):
            ct = chi_tilde(spec, mu)
            first = finite_difference(ct, d - 1, d) / factorial(d - 1)
            if d >= 2:
                second = finite_difference(ct, d - 2, d) / factorial(d - 2)
                assert closed_D_values(spec, mu) == (first, second), (spec.label, mu)
            else:
                assert closed_D_first(spec, mu) == first
            checked += 1
    assert checked > 100
    assert time.perf_counter() - start < 5.0


def test_criterion_02_leading_coefficients(criterion):
    criterion(2, "closed c0, c1, c2 equal expanded coefficients")
    assert closed_c0c1c2(type_i(2, 2), 1) == (1, -8, 23)
    ct = chi_tilde(type_i(2, 2), 1)
    assert (ct.coeff(4), ct.coeff(3), ct.coeff(2)) == (1, -8, 23)
    for spec in classical_catalog(60):
        d = spec.d
        for mu in _mus(spec):
            ct = chi_tilde(spec, mu)
            expanded = tuple(ct.coeff(d - j) for j in range(3 if d >= 2 else 2))
            assert closed_c0c1c2(spec, mu, include_c2=d >= 2) == expanded, (spec.label, mu)


def test_criterion_03_power_differences(criterion):
    criterion(3, "A_d, B_d closed forms and recurrences, d = 1..20")
    x = RationalPoly.x()
    A, B = {}, {}
    for d in range(1, 21):
        A[d] = closed_A(d)
        assert A[d] == difference(x**d, d - 1)
        if d >= 2:
            B[d] = closed_B(d)
            assert B[d] == difference(x**d, d - 2)
    for d in range(2, 21):
        assert A[d] == A[d - 1] * d - RationalPoly.constant(Fraction(factorial(d), 2))
    for d in range(3, 21):
        expected = (
            B[d - 1] * d
            - A[d - 2] * Fraction(d * (d - 1), 2)
            + RationalPoly.constant(Fraction(factorial(d), 6))
        )
        assert B[d] == expected


def test_criterion_04_expansion_consistency(criterion):
    criterion(4, "expansion reproduces epsilon; a0 = 1; a1, a2 closed forms")
    rng = random.Random(4)
    for spec in SweepRanges().specs():
        for mu in (Fraction(1), a1_constant_mu(spec), Fraction(3, 2)):
            for d0 in (1, 2):
                exp = epsilon_coefficients(spec, mu, d0)
                assert exp.coeffs[0] == RationalPoly.constant(1)
                a1, a2 = a1_a2_closed(spec, mu, d0)
                assert exp.coeffs[1] == a1 and exp.coeffs[2] == a2, (spec.label, mu, d0)
        exp = epsilon_coefficients(spec, a1_constant_mu(spec), 1)
        for _ in range(20):
            alpha = Fraction(rng.randint(1, 400), rng.randint(1, 7))
            X = Fraction(rng.randint(1, 60), 61)
            assert exp(alpha, X) == epsilon_at(spec, a1_constant_mu(spec), 1, alpha, X)


def test_criterion_05_classification(criterion):
    criterion(5, "a2 constant exactly on I(1,n) at mu = 1; factored residuals")
    start = time.perf_counter()
    verdicts = classify_sweep(SweepRanges())
    elapsed = time.perf_counter() - start
    by_label = {v.spec.label: v for v in verdicts}
    assert len(verdicts) == 21 + 6 + 5 + 6 + 2
    for v in verdicts:
        is_ball = v.spec.label.startswith("I(1,")
        assert v.a2_constant == is_ball, v.spec.label
        if is_ball:
            assert v.mu == 1
        if v.factored is not None:
            assert v.residual == v.factored, v.spec.label
    assert by_label["I(2,2)"].residual == 72
    assert by_label["IV(5)"].residual == 140
    for v in classify_sweep(SweepRanges(), mu=Fraction(1, 2)):
        assert not v.a2_constant
    assert elapsed < 5.0


def test_criterion_06_hyperbolic_constancy(criterion):
    criterion(6, "ball at mu = 1: epsilon equals prod (alpha - j)")
    rng = np.random.default_rng(6)
    prng = random.Random(6)
    for d in range(1, 5):
        spec = type_i(1, d)
        for d0 in range(1, 4):
            n = d + d0
            for _ in range(10):
                pt = rational_interior_point(spec, 1, d0, rng)
                alpha = Fraction(prng.randint(4 * n + 1, 40 * n), 4)
                params = KernelParams(spec, 1, d0, alpha)
                assert epsilon(params, pt) == math.prod(alpha - j for j in range(1, n + 1))


def test_criterion_07_brute_force_kernel(criterion):
    criterion(7, "orthonormalized monomial kernel reproduces epsilon on the disk")
    start = time.perf_counter()
    points = epsilon_points()
    for mu, alpha in ((1, 5), (2, 6)):
        reports = brute_force_epsilon(DISK, mu, alpha, points, tolerance=1e-6)
        assert len(reports) == 5
        for rep in reports:
            assert rep.passed, rep
            if mu == 1:
                assert rep.expected == pytest.approx(12, rel=1e-14)
        if mu == 2:
            assert reports[0].expected == pytest.approx(22, rel=1e-14)
            assert reports[1].expected == pytest.approx(21, rel=1e-12)
    assert time.perf_counter() - start < 30.0


def test_criterion_08_monge_ampere(criterion):
    criterion(8, "finite-difference Hessian determinant matches closed form")
    start = time.perf_counter()
    rng = np.random.default_rng(8)
    for spec in (type_i(1, 1), type_i(2, 2)):
        for _ in range(5):
            pt = random_interior_point(spec, 1, 1, rng)
            rep = hessian_check(spec, 1, 1, pt, tolerance=1e-5)
            assert rep.passed, rep
    assert time.perf_counter() - start < 10.0


def test_criterion_09_hua_integral(criterion):
    criterion(9, "Hua integral by tensor quadrature within 1e-8")
    start = time.perf_counter()
    cases = [(DISK, s) for s in (0, 1, Fraction(3, 2))] + [(type_i(1, 2), s) for s in (0, 1)]
    for spec, s in cases:
        rep = hua_integral_check(spec, s)
        assert rep.tolerance == 1e-8
        assert rep.passed, rep
    assert time.perf_counter() - start < 5.0


def test_criterion_10_operator_identity(criterion):
    criterion(10, "operator series identity exact through order 30")
    x = RationalPoly.x()
    phis = (RationalPoly.constant(1), x - 2, x * x + Fraction(1, 3) * x, x**3 - 2 * x + 1)
    for phi in phis:
        for n0 in (1, 2):
            for z in (Fraction(1, 3), Fraction(-2, 5)):
                rep = operator_identity_check(phi, n0, z, 30)
                assert rep.passed and rep.observed == 0, rep


def test_criterion_11_partitions_and_series(criterion):
    criterion(11, "partition identity k <= 12; rank-one series within 1e-8")
    for k in range(13):
        rep = partition_identity_check(k)
        assert rep.passed and rep.observed == 0, rep
    for s in (0, 1, 2, Fraction(5, 2), Fraction(7, 3)):
        for normsq in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2)):
            rep = fk_rank1_check(s, normsq, terms=60, tolerance=1e-8)
            assert rep.passed, rep


def test_criterion_12_structural_invariants(criterion):
    criterion(12, "rank identities on the catalog; c_omega vs Hessian oracle")
    for spec in full_catalog(60):
        r, a, b = spec.r, spec.a, spec.b
        assert 2 * spec.d == r * (r - 1) * a + 2 * r * b + 2 * r, spec.label
        assert spec.p == (r - 1) * a + b + 2, spec.label
    for spec in (DISK, type_i(2, 2), type_i(2, 3), type_iv(5), type_iv(6)) + tuple(
        s for s in classical_catalog(10) if s.kind.value in ("II", "III")
    ):
        rep = c_omega_check(spec, tolerance=1e-6)
        assert rep.passed, rep


def _main() -> int:
    tests = sorted((name, fn) for name, fn in globals().items() if name.startswith("test_criterion_"))
    failures = 0
    for name, fn in tests:
        info = {}
        start = time.perf_counter()
        try:
            fn(lambda n, title: info.update(number=n, title=title))
            status = "PASS"
        except Exception as exc:  # noqa: BLE001
            status = f"FAIL ({type(exc).__name__}: {exc})"
            failures += 1
        elapsed = time.perf_counter() - start
        print(f"criterion {info.get('number', name)}: {status}  {info.get('title', '')}  ({elapsed:.2f}s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(_main())
