"""
Función de partición de una partícula por cuatro vías: suma directa
certificada, forma cerrada (no relativista), Euler-MacLaurin y límite de
alta temperatura.

Todas las vías trabajan en espacio logarítmico: se extrae el factor común
exp(-(a + beta·E_1')) del estado fundamental (E_1' sin mu·B) y se suma la
serie desplazada, de modo que ``log_value`` es finito para cualquier entrada
válida aunque Z desborde o se anule en coma flotante.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Union

import numpy as np

from config.settings import (
    DEFAULT_K_MAX,
    DEFAULT_REL_TOL,
    EM_MAX_ORDER,
    FLAG_HIGH_T_WARNING,
    FLAG_OK,
    HIGH_T_VALIDITY_LIMIT,
)
from src.model.params import ModelParams, ReducedState, Regime
from src.model.spectrum import degeneracy
from src.numerics.series import (
    EmExpansion,
    SumResult,
    direct_sum,
    em_derivatives,
    euler_maclaurin_sum,
    tail_integral_nonrel,
    tail_integral_rel,
    tail_integral_rel_printed,
)
from src.utils.errors import DomainError, ExpansionError

logger = logging.getLogger(__name__)

_LOG_MAX_FLOAT = math.log(np.finfo(float).max)


class Method(str, Enum):
    """Vía de evaluación de la función de partición."""

    DIRECT = "direct"
    EULER_MACLAURIN = "em"
    HIGH_T = "high-t"
    EXACT_CLOSED_FORM = "exact-nr"


@dataclass(frozen=True)
class PartitionResult:
    """
    Resultado de una vía de cálculo de Z_1.

    ``log_value`` es la magnitud de referencia; ``value`` puede saturar a inf.
    """

    log_value: float
    value: float
    method: Method
    regime: Regime
    diagnostics: Optional[Union[SumResult, EmExpansion]] = None
    validity_flag: str = FLAG_OK


def _make_result(log_value: float, method: Method, regime: Regime, diagnostics=None, flag: str = FLAG_OK) -> PartitionResult:
    value = math.exp(log_value) if log_value < _LOG_MAX_FLOAT else math.inf
    return PartitionResult(
        log_value=log_value,
        value=value,
        method=method,
        regime=regime,
        diagnostics=diagnostics,
        validity_flag=flag,
    )


# ---------------------------------------------------------------------------
# Series desplazadas (factor del estado fundamental extraído)
# ---------------------------------------------------------------------------


def ground_exponent(regime: Regime, params: ModelParams, state: ReducedState) -> float:
    """beta·E_1 sin el término mu·B: b·sqrt(1 + 2xi) o b_bar."""
    if Regime(regime) == Regime.RELATIVISTIC:
        return state.b * math.sqrt(1.0 + 2.0 * params.xi)
    return state.b_bar


def shifted_exponents(regime: Regime, params: ModelParams, state: ReducedState, k: np.ndarray) -> np.ndarray:
    """beta·(E_k - E_1) para un bloque de índices k."""
    if Regime(regime) == Regime.RELATIVISTIC:
        xi = params.xi
        u_k = np.sqrt(1.0 + 2.0 * xi * k)
        u_1 = math.sqrt(1.0 + 2.0 * xi)
        # sqrt(1+2xi·k) - sqrt(1+2xi) sin cancelación
        return state.b * (2.0 * xi * (k - 1)) / (u_k + u_1)
    return state.b_bar * (k - 1)


def decreasing_from(regime: Regime, params: ModelParams, state: ReducedState) -> float:
    """
    Abscisa a partir de la cual el sumando es decreciente (condición suficiente).

    No relativista: x >= 2/b_bar. Relativista: 2·sqrt(1+2xi·x) <= b·xi·x,
    es decir x >= (4 + 2·sqrt(4 + b²)) / (b²·xi).
    """
    if Regime(regime) == Regime.RELATIVISTIC:
        b = state.b
        return (4.0 + 2.0 * math.sqrt(4.0 + b * b)) / (b * b * params.xi)
    return 2.0 / state.b_bar


def _shifted_tail(regime: Regime, params: ModelParams, state: ReducedState, K: np.ndarray) -> np.ndarray:
    shift = ground_exponent(regime, params, state)
    if Regime(regime) == Regime.RELATIVISTIC:
        tails = tail_integral_rel(-shift, state.b, params.xi, K)
    else:
        tails = tail_integral_nonrel(-shift, state.b_bar, K)
    return np.where(K >= decreasing_from(regime, params, state), tails, np.inf)


def _check_state(regime: Regime, state: ReducedState):
    if not state.beta > 0:
        raise DomainError(f"Estado térmico inválido: beta={state.beta}")
    if Regime(regime) == Regime.NONRELATIVISTIC and not state.b_bar > 0:
        raise DomainError(f"b_bar debe ser positivo: {state.b_bar}")


# ---------------------------------------------------------------------------
# Vías
# ---------------------------------------------------------------------------


def z_direct(
    regime: Regime,
    params: ModelParams,
    state: ReducedState,
    rel_tol: float = DEFAULT_REL_TOL,
    k_max: int = DEFAULT_K_MAX,
) -> PartitionResult:
    """
    Suma directa certificada de Z_1 = sum_k k(k+2) exp(-beta·E_k).

    La cota de cola es la integral de cola desde K (criterio integral),
    válida solo donde el sumando ya es decreciente.

    Returns:
        PartitionResult cuyo diagnóstico es la SumResult de la serie desplazada
    """
    regime = Regime(regime)
    _check_state(regime, state)

    def term(k):
        return degeneracy(k) * np.exp(-shifted_exponents(regime, params, state, k))

    def tail(K):
        return _shifted_tail(regime, params, state, K)

    summed = direct_sum(term, tail, rel_tol=rel_tol, k_max=k_max)
    log_value = -(state.a + ground_exponent(regime, params, state)) + math.log(summed.value)

    logger.debug(f"z_direct[{regime.value}] tau={state.tau:.6g}: ln Z={log_value:.12g}, K={summed.truncation_index}")
    return _make_result(log_value, Method.DIRECT, regime, diagnostics=summed)


def log_z_exact_nonrel_shifted(b_bar: float) -> float:
    """ln(x(3-x)/(1-x)³) con x = exp(-b_bar), sin el término -a."""
    if not b_bar > 0:
        raise DomainError(f"Se requiere 0 < x < 1 (b_bar={b_bar})")
    x = math.exp(-b_bar)
    one_minus_x = -math.expm1(-b_bar)
    return -b_bar + math.log(3.0 - x) - 3.0 * math.log(one_minus_x)


def z_exact_nonrel(params: ModelParams, state: ReducedState) -> PartitionResult:
    """
    Forma cerrada de la serie no relativista.

    Con sum k x^k = x/(1-x)² y sum k² x^k = x(1+x)/(1-x)³,
    sum k(k+2) x^k = x(3-x)/(1-x)³, y Z_1 = exp(-a)·x(3-x)/(1-x)³.
    """
    log_value = -state.a + log_z_exact_nonrel_shifted(state.b_bar)
    return _make_result(log_value, Method.EXACT_CLOSED_FORM, Regime.NONRELATIVISTIC)


def z_euler_maclaurin(
    regime: Regime,
    params: ModelParams,
    state: ReducedState,
    order: int = EM_MAX_ORDER,
    printed_coefficients: bool = False,
) -> PartitionResult:
    """
    Z_1 por la fórmula de Euler-MacLaurin hasta f^(2·order-1)(1).

    El desarrollo se ensambla con el factor exp(-(a + beta·E_1')) extraído,
    de modo que ``diagnostics`` contiene directamente el corchete del
    desarrollo (7/6 + 3/b̄ + ... en el caso no relativista).

    Args:
        printed_coefficients: Usa la cola relativista con los coeficientes
            impresos (numerador 3 en el término 1/b⁵) en lugar de los derivados
    """
    regime = Regime(regime)
    _check_state(regime, state)
    shift = ground_exponent(regime, params, state)

    if regime == Regime.RELATIVISTIC:
        if printed_coefficients:
            integral = tail_integral_rel_printed(-shift, state.b, params.xi)
        else:
            integral = tail_integral_rel(-shift, state.b, params.xi, 1.0)
    else:
        integral = tail_integral_nonrel(-shift, state.b_bar, 1.0)
    derivs = em_derivatives(regime, params, replace(state, a=-shift), order)

    expansion = euler_maclaurin_sum(3.0, integral, derivs, order)
    if not expansion.value > 0:
        raise ExpansionError(
            f"El desarrollo de Euler-MacLaurin no es positivo ({expansion.value:.6e}) "
            f"en tau={state.tau:.6g}; la temperatura es demasiado baja para esta vía"
        )

    log_value = -(state.a + shift) + math.log(expansion.value)
    return _make_result(log_value, Method.EULER_MACLAURIN, regime, diagnostics=expansion)


def high_t_flag(regime: Regime, state: ReducedState) -> str:
    """Marca de validez del límite de alta temperatura (a y b deben ser << 1)."""
    thermal = state.b if Regime(regime) == Regime.RELATIVISTIC else state.b_bar
    if state.a > HIGH_T_VALIDITY_LIMIT or thermal > HIGH_T_VALIDITY_LIMIT:
        return FLAG_HIGH_T_WARNING
    return FLAG_OK


def z_high_t(regime: Regime, params: ModelParams, state: ReducedState) -> PartitionResult:
    """
    Término dominante a alta temperatura: 30/(b⁶ xi³) o 2/b̄³.

    El factor exp(-a) no aparece en el límite, por lo que el resultado no
    depende del campo magnético.
    """
    regime = Regime(regime)
    _check_state(regime, state)
    if regime == Regime.RELATIVISTIC:
        log_value = math.log(30.0) - 6.0 * math.log(state.b) - 3.0 * math.log(params.xi)
    else:
        log_value = math.log(2.0) - 3.0 * math.log(state.b_bar)

    flag = high_t_flag(regime, state)
    if flag != FLAG_OK:
        logger.debug(f"z_high_t fuera de la ventana de validez: a={state.a:.3g}, b={state.b:.3g}, b_bar={state.b_bar:.3g}")
    return _make_result(log_value, Method.HIGH_T, regime, flag=flag)


def log_z_n(particles: Union[PartitionResult, float], N: int) -> float:
    """
    ln Z_N = N·ln Z_1 (estadística de Maxwell-Boltzmann, sin 1/N!).

    ``particles`` puede ser un PartitionResult o directamente ln Z_1.
    """
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise DomainError(f"N debe ser un entero >= 1: {N}")
    log_value = particles.log_value if isinstance(particles, PartitionResult) else float(particles)
    return N * log_value


def partition_function(
    method: Method,
    regime: Regime,
    params: ModelParams,
    state: ReducedState,
    rel_tol: float = DEFAULT_REL_TOL,
    k_max: int = DEFAULT_K_MAX,
    printed_coefficients: bool = False,
) -> PartitionResult:
    """Despacha a la vía pedida."""
    method = Method(method)
    regime = Regime(regime)
    if method == Method.DIRECT:
        return z_direct(regime, params, state, rel_tol, k_max)
    if method == Method.EULER_MACLAURIN:
        return z_euler_maclaurin(regime, params, state, printed_coefficients=printed_coefficients)
    if method == Method.HIGH_T:
        return z_high_t(regime, params, state)
    if regime != Regime.NONRELATIVISTIC:
        raise DomainError("La forma cerrada exacta solo existe en el régimen no relativista")
    return z_exact_nonrel(params, state)
