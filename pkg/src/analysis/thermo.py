"""
Magnitudes termodinámicas por partícula: F, U, S y C_V.

Cada vía devuelve un ThermoQuantities en unidades absolutas (energía del
sistema de unidades de ``params``); ``reduce`` pasa a las magnitudes
adimensionales de las figuras.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from config.settings import (
    DEFAULT_K_MAX,
    DEFAULT_REL_TOL,
    FD_BETA_STEP,
    FLAG_OK,
    SUM_CHUNK_MAX,
)
from src.analysis.partition import (
    Method,
    ground_exponent,
    high_t_flag,
    log_z_exact_nonrel_shifted,
    shifted_exponents,
    z_direct,
    z_euler_maclaurin,
)
from src.model.params import ModelParams, Regime
from src.model.spectrum import degeneracy, reduced_state
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThermoQuantities:
    """
    Magnitudes termodinámicas por partícula.

    F y U en unidades de energía, S y Cv en energía/temperatura (unidades
    de k_B en el sistema natural). ``log_z`` es ln Z_1.
    """

    F: float
    U: float
    S: float
    Cv: float
    log_z: float
    method: Method
    regime: Regime
    T: float
    validity_flag: str = FLAG_OK

    def identity_residual(self) -> float:
        """|U - (F + T·S)| relativo a la mayor de las tres magnitudes."""
        ts = self.T * self.S
        scale = max(abs(self.U), abs(self.F), abs(ts))
        if scale == 0:
            return 0.0
        return abs(self.U - (self.F + ts)) / scale

    def totals(self, n: int) -> "ThermoQuantities":
        """Totales extensivos para N partículas (ln Z_N = N·ln Z_1)."""
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise DomainError(f"N debe ser un entero >= 1: {n}")
        return replace(self, F=n * self.F, U=n * self.U, S=n * self.S, Cv=n * self.Cv, log_z=n * self.log_z)


@dataclass(frozen=True)
class ReducedQuantities:
    """
    Magnitudes adimensionales.

    Relativista: F/m0c2, U/m0c2, S/k_B, Cv/k_B. No relativista: las energías
    se dejan sin reducir (f = F/N, u = U/N) y S, Cv en unidades de k_B.
    ``thermal_energy`` es tau (relativista) o k_B·T (no relativista), de
    modo que U_bar = F_bar + thermal_energy·S_bar.
    """

    F_bar: float
    U_bar: float
    S_bar: float
    Cv_bar: float
    regime: Regime
    tau: float
    thermal_energy: float
    method: Method
    validity_flag: str = FLAG_OK


# ---------------------------------------------------------------------------
# Vía de momentos (suma directa)
# ---------------------------------------------------------------------------


def _series_moments(regime: Regime, params: ModelParams, state, K: int) -> tuple[float, float, float]:
    """
    Peso total, media y suma de cuadrados centrada de y_k = beta·(E_k - E_1).

    Se recorre k = 1..K por bloques y se combinan los momentos de cada bloque
    con la actualización de varianza por pares de Chan.
    """
    weight = 0.0
    mean = 0.0
    m2 = 0.0
    start = 1
    while start <= K:
        stop = min(start + SUM_CHUNK_MAX - 1, K)
        k = np.arange(start, stop + 1, dtype=np.int64)
        y = shifted_exponents(regime, params, state, k)
        w = degeneracy(k) * np.exp(-y)

        c0 = float(w.sum())
        if c0 > 0:
            mean_c = float((w * y).sum()) / c0
            c2 = float((w * (y - mean_c) ** 2).sum())
            delta = mean_c - mean
            total = weight + c0
            mean += delta * c0 / total
            m2 += c2 + delta * delta * weight * c0 / total
            weight = total
        start = stop + 1

    return weight, mean, m2


def thermo_from_series(
    regime: Regime,
    params: ModelParams,
    T: float,
    rel_tol: float = DEFAULT_REL_TOL,
    k_max: int = DEFAULT_K_MAX,
) -> ThermoQuantities:
    """
    Termodinámica por sumas de momentos sobre la misma truncación que z_direct.

    Con W = sum Omega_k exp(-y_k), M = <y>, Var = <(y - M)²>:
    U = mu·B + (y_1 + M)/beta, F = mu·B - ln(Z e^a)/beta,
    S = k_B(ln W + M), Cv = k_B·Var. S y Cv no dependen de a.

    Args:
        regime: Régimen del espectro
        params: Parámetros físicos
        T: Temperatura
        rel_tol: Tolerancia relativa de truncamiento
        k_max: Número máximo de términos

    Returns:
        ThermoQuantities por partícula (método ``direct``)
    """
    regime = Regime(regime)
    state = reduced_state(params, T)
    certified = z_direct(regime, params, state, rel_tol=rel_tol, k_max=k_max)
    K = certified.diagnostics.truncation_index

    weight, mean, m2 = _series_moments(regime, params, state, K)
    shift = ground_exponent(regime, params, state)
    log_w = math.log(weight)
    k_b = params.boltzmann

    U = params.mu_b + (shift + mean) / state.beta
    F = params.mu_b - (log_w - shift) / state.beta
    S = k_b * (log_w + mean)
    Cv = k_b * (m2 / weight)
    log_z = -(state.a + shift) + log_w

    logger.debug(f"thermo_from_series[{regime.value}] tau={state.tau:.6g}: K={K}, Cv/k_B={m2 / weight:.10g}")
    return ThermoQuantities(F=F, U=U, S=S, Cv=Cv, log_z=log_z, method=Method.DIRECT, regime=regime, T=float(T))


# ---------------------------------------------------------------------------
# Formas cerradas
# ---------------------------------------------------------------------------


def thermo_exact_nonrel(params: ModelParams, T: float) -> ThermoQuantities:
    """
    Termodinámica no relativista exacta a partir de Z = e^{-a} x(3-x)/(1-x)³.

    <k> = 1 - x/(3-x) + 3x/(1-x) y Var k = 3x[(1-x)^-2 - (3-x)^-2].
    """
    state = reduced_state(params, T)
    b_bar = state.b_bar
    x = state.x
    one_minus_x = -math.expm1(-b_bar)
    three_minus_x = 3.0 - x

    mean_k = 1.0 - x / three_minus_x + 3.0 * x / one_minus_x
    var_k = 3.0 * x * (1.0 / one_minus_x**2 - 1.0 / three_minus_x**2)
    log_z0 = log_z_exact_nonrel_shifted(b_bar)
    k_b = params.boltzmann

    U = params.mu_b + params.xi_bar * mean_k
    F = params.mu_b - log_z0 / state.beta
    S = k_b * (log_z0 + b_bar * mean_k)
    Cv = k_b * b_bar**2 * var_k

    return ThermoQuantities(
        F=F,
        U=U,
        S=S,
        Cv=Cv,
        log_z=log_z0 - state.a,
        method=Method.EXACT_CLOSED_FORM,
        regime=Regime.NONRELATIVISTIC,
        T=float(T),
    )


def thermo_high_t(regime: Regime, params: ModelParams, T: float) -> ThermoQuantities:
    """
    Formas cerradas de alta temperatura.

    Relativista: ln Z = ln(30 tau⁶/xi³), U = 6k_BT, Cv = 6k_B.
    No relativista: ln Z = ln(2/b̄³), U = 3k_BT, Cv = 3k_B.
    Ninguna depende del campo magnético.
    """
    regime = Regime(regime)
    state = reduced_state(params, T)
    k_b = params.boltzmann
    kT = k_b * state.T

    if regime == Regime.RELATIVISTIC:
        dof = 6.0
        log_z = math.log(30.0) + 6.0 * math.log(state.tau) - 3.0 * math.log(params.xi)
    else:
        dof = 3.0
        log_z = math.log(2.0) - 3.0 * math.log(state.b_bar)

    return ThermoQuantities(
        F=-kT * log_z,
        U=dof * kT,
        S=k_b * (dof + log_z),
        Cv=dof * k_b,
        log_z=log_z,
        method=Method.HIGH_T,
        regime=regime,
        T=float(T),
        validity_flag=high_t_flag(regime, state),
    )


# ---------------------------------------------------------------------------
# Diferencias finitas en beta
# ---------------------------------------------------------------------------


def thermo_from_log_z(
    log_z: Callable[[float], float],
    params: ModelParams,
    T: float,
    method: Method = Method.EULER_MACLAURIN,
    regime: Regime = Regime.RELATIVISTIC,
    step: float = FD_BETA_STEP,
) -> ThermoQuantities:
    """
    U y Cv por diferencias centrales de ln Z(beta) con paso ``step``·beta.

    Args:
        log_z: Función beta -> ln Z_1(beta)
        params: Parámetros físicos (aportan k_B)
        T: Temperatura
        method: Etiqueta de la vía que produce ``log_z``
        regime: Régimen del espectro
        step: Paso relativo en beta

    Returns:
        ThermoQuantities con F = -ln Z/beta y S = k_B(ln Z + beta·U)
    """
    if not (T > 0 and math.isfinite(T)):
        raise DomainError(f"La temperatura debe ser positiva y finita: {T}")
    k_b = params.boltzmann
    beta = 1.0 / (k_b * T)
    h = step * beta

    l_minus = log_z(beta - h)
    l_zero = log_z(beta)
    l_plus = log_z(beta + h)

    U = -(l_plus - l_minus) / (2.0 * h)
    second = (l_plus - 2.0 * l_zero + l_minus) / (h * h)

    return ThermoQuantities(
        F=-l_zero / beta,
        U=U,
        S=k_b * (l_zero + beta * U),
        Cv=k_b * beta * beta * second,
        log_z=l_zero,
        method=Method(method),
        regime=Regime(regime),
        T=float(T),
    )


def log_z_function(method: Method, regime: Regime, params: ModelParams, **kwargs) -> Callable[[float], float]:
    """Cierre beta -> ln Z_1 para la vía pedida (útil con thermo_from_log_z)."""
    method = Method(method)
    regime = Regime(regime)

    def evaluate(beta: float) -> float:
        state = reduced_state(params, 1.0 / (params.boltzmann * beta))
        if method == Method.DIRECT:
            return z_direct(regime, params, state, **kwargs).log_value
        if method == Method.EULER_MACLAURIN:
            return z_euler_maclaurin(regime, params, state, **kwargs).log_value
        raise DomainError(f"Vía sin cierre en beta: {method.value}")

    return evaluate


# ---------------------------------------------------------------------------
# Despacho, reducción y Dulong-Petit
# ---------------------------------------------------------------------------


def thermodynamics(
    method: Method,
    regime: Regime,
    params: ModelParams,
    T: float,
    rel_tol: float = DEFAULT_REL_TOL,
    k_max: int = DEFAULT_K_MAX,
    printed_coefficients: bool = False,
) -> ThermoQuantities:
    """Magnitudes termodinámicas por la vía ``method``."""
    method = Method(method)
    regime = Regime(regime)

    if method == Method.DIRECT:
        return thermo_from_series(regime, params, T, rel_tol=rel_tol, k_max=k_max)
    if method == Method.HIGH_T:
        return thermo_high_t(regime, params, T)
    if method == Method.EULER_MACLAURIN:
        log_z = log_z_function(method, regime, params, printed_coefficients=printed_coefficients)
        return thermo_from_log_z(log_z, params, T, method=method, regime=regime)
    if regime != Regime.NONRELATIVISTIC:
        raise DomainError("La forma cerrada exacta solo existe en el régimen no relativista")
    return thermo_exact_nonrel(params, T)


def reduce(q: ThermoQuantities, params: ModelParams) -> ReducedQuantities:
    """Reescala ThermoQuantities a las magnitudes adimensionales del régimen."""
    k_b = params.boltzmann
    tau = k_b * q.T / params.m0c2

    if q.regime == Regime.RELATIVISTIC:
        energy_unit = params.m0c2
        thermal_energy = tau
    else:
        energy_unit = 1.0
        thermal_energy = k_b * q.T

    return ReducedQuantities(
        F_bar=q.F / energy_unit,
        U_bar=q.U / energy_unit,
        S_bar=q.S / k_b,
        Cv_bar=q.Cv / k_b,
        regime=q.regime,
        tau=tau,
        thermal_energy=thermal_energy,
        method=q.method,
        validity_flag=q.validity_flag,
    )


def dulong_petit_ratio(
    params: ModelParams,
    T: float,
    method: str = "series",
    rel_tol: float = DEFAULT_REL_TOL,
    k_max: int = DEFAULT_K_MAX,
) -> float:
    """
    Cociente Cv relativista / Cv no relativista con xi_bar = xi·m0c2.

    Args:
        method: "series" (sumas de momentos) o "closed-form" (6/3)
    """
    if method == "closed-form":
        rel = thermo_high_t(Regime.RELATIVISTIC, params, T)
        nonrel = thermo_high_t(Regime.NONRELATIVISTIC, params, T)
    elif method == "series":
        rel = thermo_from_series(Regime.RELATIVISTIC, params, T, rel_tol=rel_tol, k_max=k_max)
        nonrel = thermo_from_series(Regime.NONRELATIVISTIC, params, T, rel_tol=rel_tol, k_max=k_max)
    else:
        raise DomainError(f"Vía de Dulong-Petit desconocida: {method}")

    ratio = rel.Cv / nonrel.Cv
    logger.info(f"Dulong-Petit ({method}) en T={T:.6g}: Cv_rel/Cv_nonrel = {ratio:.6f}")
    return ratio
