import math

import numpy as np
import pytest

from src.numerics.quadrature import quadrature_oracle, tail_integral_nonrel_quad, tail_integral_rel_quad
from src.numerics.series import tail_integral_nonrel, tail_integral_rel
from src.utils.errors import DomainError


def test_exponential():
    result = quadrature_oracle(lambda x: np.exp(-x), 0.0)
    assert result.value == pytest.approx(1.0, rel=1e-12)
    assert result.relative_error <= 1e-10
    assert result.segments >= 1


def test_slow_decay_with_scale():
    result = quadrature_oracle(lambda x: np.exp(-0.01 * x), 0.0, scale=100.0)
    assert result.value == pytest.approx(100.0, rel=1e-10)


def test_reference_tail_value():
    assert tail_integral_rel_quad(0.0, 1.0, 1.0).value == pytest.approx(32.0819, abs=1e-4)


@pytest.mark.parametrize("a", [0.0, 0.1])
@pytest.mark.parametrize("b", [0.1, 1.0, 5.0])
@pytest.mark.parametrize("xi", [1.0, 5.0, 10.0, 15.0])
@pytest.mark.parametrize("x0", [1.0, 2.0])
def test_rel_closed_form_matches(a, b, xi, x0):
    oracle = tail_integral_rel_quad(a, b, xi, x0).value
    assert tail_integral_rel(a, b, xi, x0) == pytest.approx(oracle, rel=1e-8)


@pytest.mark.parametrize("a", [0.0, 0.1])
@pytest.mark.parametrize("b_bar", [0.1, 1.0, 5.0])
@pytest.mark.parametrize("x0", [1.0, 2.0])
def test_nonrel_closed_form_matches(a, b_bar, x0):
    oracle = tail_integral_nonrel_quad(a, b_bar, x0).value
    assert tail_integral_nonrel(a, b_bar, x0) == pytest.approx(oracle, rel=1e-8)


def test_invalid_arguments():
    with pytest.raises(DomainError):
        quadrature_oracle(math.exp, 0.0, scale=0.0)
    with pytest.raises(DomainError):
        tail_integral_rel_quad(0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        tail_integral_nonrel_quad(0.0, -1.0)
