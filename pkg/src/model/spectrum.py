"""
Espectros de energía, degeneración y variables térmicas reducidas.

Todas las funciones aceptan un entero o un array de enteros ``k`` (numpy) y
devuelven un escalar o un array del mismo tamaño.
"""

import logging
import math

import numpy as np

from src.model.params import ModelParams, ReducedState
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)


def _check_quantum_number(k):
    """Valida que k >= 1 (el espectro empieza en k = 1)."""
    k_arr = np.asarray(k)
    if k_arr.size and not np.issubdtype(k_arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(k_arr, 1), 0)):
            raise DomainError(f"El número cuántico k debe ser entero: {k}")
        k_arr = k_arr.astype(np.int64)
    if k_arr.size and np.min(k_arr) < 1:
        raise DomainError(f"El número cuántico k debe ser >= 1: {k}")
    return k_arr


def _as_output(values, k):
    if np.ndim(k) == 0:
        return values.item()
    return values


def reduced_state(params: ModelParams, T: float) -> ReducedState:
    """
    Calcula las variables adimensionales a la temperatura T.

    Args:
        params: Parámetros físicos
        T: Temperatura (unidad natural o kelvin según ``params.units``)

    Returns:
        ReducedState con beta, tau, T0, a, b, b_bar y x = exp(-b_bar)
    """
    if not (T > 0 and math.isfinite(T)):
        raise DomainError(f"La temperatura debe ser positiva y finita: {T}")

    k_b = params.boltzmann
    beta = 1.0 / (k_b * T)
    b_bar = beta * params.xi_bar

    return ReducedState(
        T=float(T),
        beta=beta,
        tau=k_b * T / params.m0c2,
        T0=params.characteristic_temperature,
        a=params.mu_b * beta,
        b=beta * params.m0c2,
        b_bar=b_bar,
        x=math.exp(-b_bar),
    )


def energy_rel(k, params: ModelParams):
    """
    Espectro relativista E_k = mu·B + m0c2·sqrt(1 + 2·xi·k).

    Args:
        k: Número cuántico (k >= 1), escalar o array
        params: Parámetros físicos

    Returns:
        Energía (misma forma que k)
    """
    k_arr = _check_quantum_number(k)
    values = params.mu_b + params.m0c2 * np.sqrt(1.0 + 2.0 * params.xi * k_arr)
    return _as_output(values, k)


def energy_nonrel(k, params: ModelParams):
    """Espectro no relativista eps_k = mu·B + xi_bar·k."""
    k_arr = _check_quantum_number(k)
    values = params.mu_b + params.xi_bar * k_arr
    return _as_output(values, k)


def degeneracy(k):
    """
    Degeneración total del nivel k: sum_{|m_j|=1..k} (2|m_j| + 1) = k(k+2).

    Se calcula en aritmética entera.
    """
    k_arr = _check_quantum_number(k).astype(np.int64)
    values = k_arr * (k_arr + 2)
    if np.ndim(k) == 0:
        return int(values)
    return values
