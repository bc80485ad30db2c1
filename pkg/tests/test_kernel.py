import math
import warnings
from fractions import Fraction
from math import prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartan_hartogs.algebra import RationalPoly
from cartan_hartogs.catalog import (
    EXCEPTIONAL,
    PointCH,
    c_omega,
    fiber_gap,
    kahler_potential,
    random_interior_point,
    rational_interior_point,
    type_i,
    type_ii,
    type_iii,
    type_iv,
)
from cartan_hartogs.errors import MembershipError, UnsupportedKindError
from cartan_hartogs.kernel import (
    EpsilonExpansion,
    InadmissibleWeightWarning,
    KernelParams,
    a1_a2_closed,
    bergman_kernel,
    bergman_kernel_series,
    epsilon,
    epsilon_at,
    epsilon_coefficients,
    expansion_table,
    fiber_ratio,
    metric_det,
)

from conftest import positive_rationals, spec_strategy

DISK = type_i(1, 1)
X = RationalPoly.x()
CLASSICAL = [DISK, type_i(1, 2), type_i(2, 2), type_i(2, 3), type_ii(4), type_ii(5), type_iii(2), type_iii(3), type_iv(5)]
alphas = st.fractions(min_value=-20, max_value=40, max_denominator=7)
ratios = st.fractions(min_value=Fraction(1, 50), max_value=1, max_denominator=50)


def quiet(fn, *args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InadmissibleWeightWarning)
        return fn(*args)


class TestParams:
    def test_threshold(self):
        params = KernelParams(type_i(2, 2), Fraction(1, 10), 1, 40)
        assert params.threshold == 30 and params.admissible
        assert not KernelParams(type_i(2, 2), 1, 1, 5).admissible

    def test_validation(self):
        with pytest.raises(ValueError):
            KernelParams(DISK, 0, 1, 5)
        with pytest.raises(ValueError):
            KernelParams(DISK, 1, 0, 5)

    def test_warning_but_evaluates(self):
        params = KernelParams(DISK, 1, 1, 2)
        with pytest.warns(InadmissibleWeightWarning):
            assert epsilon(params, PointCH.origin(DISK, 1)) == 0


class TestMetricDet:
    @pytest.mark.parametrize("spec", CLASSICAL, ids=lambda s: s.label)
    @pytest.mark.parametrize("mu", [Fraction(1, 2), 1, Fraction(7, 3)])
    def test_origin(self, spec, mu):
        params = KernelParams(spec, mu, 2, 50)
        assert metric_det(params, PointCH.origin(spec, 2)) == mu**spec.d * c_omega(spec)

    def test_examples(self):
        params = KernelParams(DISK, 1, 1, 5)
        assert metric_det(params, PointCH([0], [math.sqrt(0.5)])) == pytest.approx(8)
        assert metric_det(params, PointCH([math.sqrt(0.5)], [0])) == pytest.approx(8)

    def test_errors(self):
        with pytest.raises(MembershipError):
            metric_det(KernelParams(DISK, 1, 1, 5), PointCH(["1/2"], ["1"]))
        with pytest.raises(UnsupportedKindError):
            metric_det(KernelParams(EXCEPTIONAL[0], 1, 1, 50), PointCH.origin(type_iv(5), 1))


class TestKernel:
    def test_disk_values(self):
        params = KernelParams(DISK, 1, 1, 5)
        assert bergman_kernel(params, PointCH([0], [0])) == 12
        assert bergman_kernel(params, PointCH([0], [math.sqrt(0.5)])) == pytest.approx(384)
        assert bergman_kernel(params, PointCH([0], ["1/2"])) == Fraction(4096, 81)

    @pytest.mark.parametrize("spec", CLASSICAL, ids=lambda s: s.label)
    def test_kernel_times_weight_is_epsilon(self, spec):
        rng = np.random.default_rng(5)
        mu = Fraction(spec.p, spec.d + 1)
        params = KernelParams(spec, mu, 1, spec.d + 4)
        for _ in range(3):
            pt = rational_interior_point(spec, 1, 1, rng)
            p1 = KernelParams(spec, 1, 1, spec.d + 4)
            # exp(-alpha Phi) = gap^alpha, exact for rational points
            assert bergman_kernel(p1, pt) * fiber_gap(spec, 1, pt) ** p1.alpha.numerator == epsilon(p1, pt)
            fp = random_interior_point(spec, mu, 1, rng)
            k = bergman_kernel(params, fp)
            weight = math.exp(-float(params.alpha) * kahler_potential(spec, mu, fp))
            assert k * weight == pytest.approx(float(epsilon(params, fp)), rel=1e-10)

    @pytest.mark.parametrize("spec", CLASSICAL, ids=lambda s: s.label)
    def test_polarized_diagonal(self, spec):
        rng = np.random.default_rng(9)
        params = KernelParams(spec, 1, 2, spec.d + 5)
        pt = random_interior_point(spec, 1, 2, rng)
        assert complex(bergman_kernel(params, pt, pt)) == pytest.approx(bergman_kernel(params, pt), rel=1e-12)
        q = random_interior_point(spec, 1, 2, rng)
        assert complex(bergman_kernel(params, pt, q)) == pytest.approx(np.conj(complex(bergman_kernel(params, q, pt))), rel=1e-10)

    def test_polarized_exact(self):
        params = KernelParams(DISK, 2, 1, 6)
        pt = PointCH(["1/3"], ["1/5"])
        assert bergman_kernel(params, pt, pt) == bergman_kernel(params, pt)

    @pytest.mark.parametrize(
        "spec,mu,d0,alpha",
        [(DISK, 1, 1, 5), (DISK, 2, 1, 6), (type_i(2, 2), 1, 1, 7), (type_i(1, 3), Fraction(3, 2), 2, 9), (type_iii(2), Fraction(3, 4), 1, 8), (type_iv(5), Fraction(5, 6), 1, 9)],
    )
    def test_unsimplified_series(self, spec, mu, d0, alpha):
        rng = np.random.default_rng(1)
        params = KernelParams(spec, mu, d0, alpha)
        for _ in range(3):
            pt = random_interior_point(spec, mu, d0, rng, fiber_fill=0.4)
            assert bergman_kernel_series(params, pt) == pytest.approx(bergman_kernel(params, pt), rel=1e-11)


class TestEpsilon:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    @pytest.mark.parametrize("d0", [1, 2, 3])
    def test_ball_is_constant(self, d, d0):
        spec = type_i(1, d)
        exp = epsilon_coefficients(spec, 1, d0)
        assert all(a.is_constant() for a in exp.coeffs)
        target = prod((X - j for j in range(1, d + d0 + 1)), start=RationalPoly.constant(1))
        for alpha in (Fraction(17, 2), 11, 30):
            for x in (Fraction(1, 7), Fraction(1, 2), 1):
                assert epsilon_at(spec, 1, d0, alpha, x) == target(alpha)

    def test_disk_formula(self):
        for mu in (Fraction(1, 3), 2, Fraction(9, 4)):
            for alpha in (5, Fraction(13, 2)):
                for x in (Fraction(1, 3), 1):
                    expect = (mu - 1) / mu * x * (alpha - 2) + (alpha - 2) * (alpha - 1)
                    assert epsilon_at(DISK, mu, 1, alpha, x) == expect
        assert epsilon_at(DISK, 2, 1, 6, 1) == 22
        assert epsilon_at(DISK, 2, 1, 6, Fraction(1, 2)) == 21

    def test_point_and_ratio_agree(self):
        params = KernelParams(type_i(2, 2), 1, 1, 7)
        pt = PointCH(["1/4", "0", "1/8", "-1/4"], ["1/3"])
        assert epsilon(params, pt) == epsilon_at(params.spec, 1, 1, 7, fiber_ratio(params.spec, 1, pt))

    @given(spec_strategy.filter(lambda s: s.d <= 16), positive_rationals, st.integers(1, 3), st.data())
    def test_positive_when_admissible(self, spec, mu, d0, data):
        params = KernelParams(spec, mu, d0, 0)
        alpha = params.threshold + data.draw(st.fractions(min_value=Fraction(1, 100), max_value=10, max_denominator=100))
        x = data.draw(ratios)
        assert epsilon_at(spec, mu, d0, alpha, x) > 0


class TestExpansion:
    def test_type_i_2_2(self):
        exp = epsilon_coefficients(type_i(2, 2), 1, 1)
        assert exp.coeffs[0] == RationalPoly.constant(1)
        assert exp.coeffs[1] == 2 * X - 15
        assert exp.coeffs[2] == 6 * X * X - 28 * X + 85
        assert a1_a2_closed(type_i(2, 2), 1, 1) == (2 * X - 15, 6 * X * X - 28 * X + 85)

    def test_disk_a2(self):
        _, a2 = a1_a2_closed(DISK, 2, 1)
        assert a2 == -X + 2
        for d0 in range(1, 6):
            _, a2 = a1_a2_closed(DISK, 1, d0)
            assert a2 == RationalPoly.constant(Fraction(d0 * (d0 + 1) * (d0 + 2) * (3 * d0 + 5), 24))

    @given(spec_strategy, positive_rationals, st.integers(1, 3))
    def test_structure(self, spec, mu, d0):
        exp = epsilon_coefficients(spec, mu, d0)
        assert exp.n == spec.d + d0
        assert exp.coeffs[0] == RationalPoly.constant(1)
        for j, a in enumerate(exp.coeffs):
            assert a.degree <= min(j, spec.d)
        assert exp.coeffs[1:3] == a1_a2_closed(spec, mu, d0)

    @given(spec_strategy, positive_rationals, st.integers(1, 3), alphas, ratios)
    def test_reproduces_epsilon(self, spec, mu, d0, alpha, x):
        exp = epsilon_coefficients(spec, mu, d0)
        assert exp(alpha, x) == epsilon_at(spec, mu, d0, alpha, x)

    @given(spec_strategy, positive_rationals)
    def test_a1_constant_iff_kahler_einstein(self, spec, mu):
        a1 = epsilon_coefficients(spec, mu, 1).coeffs[1]
        assert a1.is_constant() == (mu == Fraction(spec.p, spec.d + 1))

    def test_json_round_trip(self):
        exp = epsilon_coefficients(type_iii(3), Fraction(4, 7), 2)
        assert EpsilonExpansion.from_json(exp.to_json()) == exp

    def test_table(self):
        rows = expansion_table(type_i(2, 2), 1, 1)
        assert rows[1] == {"j": 1, "a_j": "2*X - 15"}
