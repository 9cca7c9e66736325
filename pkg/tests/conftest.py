"""
Fixtures compartidas: parámetros en unidades naturales (m0 = 1).
"""

import pytest

from src.model.params import ModelParams, Regime
from src.model.spectrum import reduced_state


def rel_case(a: float, b: float, xi: float):
    """Parámetros y estado relativistas con los valores reducidos (a, b, xi)."""
    T = 1.0 / b
    params = ModelParams(mu=a * T, B=1.0, xi=xi, regime=Regime.RELATIVISTIC)
    return params, reduced_state(params, T)


def nonrel_case(a: float, b_bar: float, xi_bar: float = 1.0):
    """Parámetros y estado no relativistas con los valores reducidos (a, b_bar)."""
    T = xi_bar / b_bar
    params = ModelParams(mu=a * T, B=1.0, xi_bar=xi_bar, regime=Regime.NONRELATIVISTIC)
    return params, reduced_state(params, T)


@pytest.fixture
def rel_params():
    return ModelParams(xi=1.0, regime=Regime.RELATIVISTIC)


@pytest.fixture
def nonrel_params():
    return ModelParams(xi=1.0, regime=Regime.NONRELATIVISTIC)


@pytest.fixture
def field_params():
    """mu·B = 2 en el régimen relativista."""
    return ModelParams(mu=1.0, B=2.0, xi=5.0, regime=Regime.RELATIVISTIC)
