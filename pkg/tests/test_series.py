import math
from fractions import Fraction

import numpy as np
import pytest

from src.model.params import Regime
from src.numerics.series import (
    bernoulli,
    direct_sum,
    em_derivatives,
    euler_maclaurin_sum,
    finite_difference_odd_derivatives,
    finite_difference_step,
    nonrel_odd_derivatives,
    nonrel_summand,
    rel_odd_derivatives,
    rel_summand,
    tail_coefficients_rel,
    tail_coefficients_rel_printed,
    tail_integral_nonrel,
    tail_integral_rel,
    tail_integral_rel_printed,
)
from src.utils.errors import DomainError, TruncationError
from tests.conftest import nonrel_case, rel_case


class TestBernoulli:
    def test_known_values(self):
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(4) == Fraction(-1, 30)
        assert bernoulli(6) == Fraction(1, 42)
        assert bernoulli(20) == Fraction(-174611, 330)

    @pytest.mark.parametrize("index", [0, 3, 22, 2.0, True])
    def test_invalid_index(self, index):
        with pytest.raises(DomainError):
            bernoulli(index)


class TestDirectSum:
    def test_geometric_series(self):
        result = direct_sum(lambda k: 0.5**k, lambda K: 0.5**K, rel_tol=1e-12)
        assert result.value == pytest.approx(1.0, rel=1e-12)
        assert result.truncation_index == 40
        assert result.tail_bound <= 1e-12 * result.value

    def test_no_bound_until_decreasing(self):
        result = direct_sum(
            lambda k: 0.5**k,
            lambda K: np.where(K >= 100, 0.5**K, np.inf),
            rel_tol=1e-12,
        )
        assert result.truncation_index == 100

    def test_truncation_error_carries_best(self):
        with pytest.raises(TruncationError) as excinfo:
            direct_sum(lambda k: 1.0 / k**2, lambda K: 1.0 / K, rel_tol=1e-12, k_max=1000)
        best = excinfo.value.best
        assert best.truncation_index == 1000
        assert best.value == pytest.approx(math.pi**2 / 6, rel=1e-3)

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            direct_sum(lambda k: 0.5**k, lambda K: 0.5**K, rel_tol=0.0)
        with pytest.raises(DomainError):
            direct_sum(lambda k: 0.5**k, lambda K: 0.5**K, k_max=0)


class TestEulerMaclaurin:
    def test_exponential_sum(self):
        g = math.exp(-1.0)
        expansion = euler_maclaurin_sum(g, g, [-g, -g], order=2)
        assert expansion.value == pytest.approx(0.5819648, abs=1e-7)
        assert abs(expansion.value - 1.0 / (math.e - 1.0)) < 2e-5
        assert expansion.boundary_term == pytest.approx(0.5 * g)
        assert expansion.correction_terms == pytest.approx((g / 12.0, -g / 720.0))

    def test_order_zero(self):
        expansion = euler_maclaurin_sum(2.0, 5.0, [], order=0)
        assert expansion.value == 6.0
        assert expansion.correction_terms == ()

    @pytest.mark.parametrize("order", [-1, 11, 1.5])
    def test_invalid_order(self, order):
        with pytest.raises(DomainError):
            euler_maclaurin_sum(1.0, 1.0, [0.0] * 11, order=order)

    def test_missing_derivatives(self):
        with pytest.raises(DomainError):
            euler_maclaurin_sum(1.0, 1.0, [0.0], order=2)


class TestTailIntegrals:
    def test_nonrel_value(self):
        assert tail_integral_nonrel(0.0, 1.0, 1.0) == pytest.approx(9.0 * math.exp(-1.0), rel=1e-14)

    def test_rel_value(self):
        assert tail_integral_rel(0.0, 1.0, 1.0, 1.0) == pytest.approx(32.0819, abs=1e-4)

    def test_printed_coefficients_undershoot(self):
        derived = tail_integral_rel(0.0, 1.0, 1.0)
        printed = tail_integral_rel_printed(0.0, 1.0, 1.0)
        expected_gap = 27.0 * math.sqrt(3.0) * math.exp(-math.sqrt(3.0))
        assert derived - printed == pytest.approx(expected_gap, rel=1e-12)

    def test_printed_with_derived_numerator_matches(self):
        assert tail_integral_rel_printed(0.3, 0.7, 5.0, b5_numerator=30.0) == pytest.approx(
            tail_integral_rel(0.3, 0.7, 5.0), rel=1e-13
        )

    @pytest.mark.parametrize("xi", [1.0, 5.0, 10.0, 15.0])
    def test_coefficient_ratios(self, xi):
        derived = tail_coefficients_rel(xi)
        printed = tail_coefficients_rel_printed(xi)
        for j in (0, 1, 2, 3, 5):
            assert printed[j] == pytest.approx(float(derived[j]), rel=1e-13)
        assert float(derived[4]) / printed[4] == pytest.approx(10.0)

    def test_array_lower_limit(self):
        x0 = np.array([1.0, 2.0, 5.0])
        values = tail_integral_rel(0.0, 1.0, 5.0, x0)
        assert values.shape == (3,)
        assert np.all(np.diff(values) < 0)
        assert values[1] == pytest.approx(tail_integral_rel(0.0, 1.0, 5.0, 2.0))

    def test_field_factor(self):
        assert tail_integral_nonrel(0.5, 2.0) == pytest.approx(math.exp(-0.5) * tail_integral_nonrel(0.0, 2.0))

    @pytest.mark.parametrize(
        "call",
        [
            lambda: tail_integral_nonrel(0.0, 0.0),
            lambda: tail_integral_nonrel(0.0, 1.0, 0.5),
            lambda: tail_integral_rel(0.0, -1.0, 1.0),
            lambda: tail_integral_rel(0.0, 1.0, 0.0),
        ],
    )
    def test_invalid_arguments(self, call):
        with pytest.raises(DomainError):
            call()


class TestDerivatives:
    def test_nonrel_closed_form(self):
        b = 0.5
        g = math.exp(-b)
        assert nonrel_odd_derivatives(0.0, b) == pytest.approx([(4 - 1.5) * g, (-0.375 + 3.0 - 3.0) * g])

    @pytest.mark.parametrize("a", [0.0, 0.1])
    @pytest.mark.parametrize("b", [0.1, 1.0, 5.0])
    @pytest.mark.parametrize("xi", [1.0, 5.0, 10.0, 15.0])
    def test_rel_against_finite_differences(self, a, b, xi):
        exact = rel_odd_derivatives(a, b, xi)
        h = finite_difference_step(Regime.RELATIVISTIC, b, xi)
        approx = finite_difference_odd_derivatives(lambda x: rel_summand(x, a, b, xi), 1.0, h)
        for e, n in zip(exact, approx):
            assert abs(e - n) / max(1.0, abs(e)) < 1e-6

    @pytest.mark.parametrize("b_bar", [0.1, 1.0, 5.0])
    def test_nonrel_against_finite_differences(self, b_bar):
        exact = nonrel_odd_derivatives(0.1, b_bar)
        h = finite_difference_step(Regime.NONRELATIVISTIC, b_bar, 1.0)
        approx = finite_difference_odd_derivatives(lambda x: nonrel_summand(x, 0.1, b_bar), 1.0, h)
        for e, n in zip(exact, approx):
            assert abs(e - n) / max(1.0, abs(e)) < 1e-6

    def test_truncated_order(self):
        assert len(rel_odd_derivatives(0.0, 1.0, 1.0, max_order=1)) == 1
        with pytest.raises(DomainError):
            nonrel_odd_derivatives(0.0, 1.0, max_order=3)

    def test_em_derivatives_dispatch(self, caplog):
        params, state = rel_case(0.0, 0.5, 5.0)
        assert em_derivatives(Regime.RELATIVISTIC, params, state) == rel_odd_derivatives(0.0, 0.5, 5.0)
        params, state = nonrel_case(0.0, 2.0)
        assert em_derivatives(Regime.NONRELATIVISTIC, params, state) == nonrel_odd_derivatives(0.0, 2.0)
        assert "difiere" not in caplog.text
