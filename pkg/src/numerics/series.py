"""
Numérica de series: suma directa certificada, fórmula de Euler-MacLaurin,
números de Bernoulli, integrales de cola en forma cerrada y derivadas
analíticas del sumando en el borde x = 1.

El sumando de los dos espectros es

    relativista:     f(x) = x(x+2) exp(-(a + b·sqrt(1 + 2·xi·x)))
    no relativista:  f(x) = x(x+2) exp(-(a + b_bar·x))

Las funciones de cola aceptan ``x0`` escalar o array (numpy) para que la
suma directa pueda evaluar la cota de cola sobre bloques enteros de índices.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from config.settings import (
    BERNOULLI_MAX_INDEX,
    DEFAULT_K_MAX,
    DEFAULT_REL_TOL,
    EM_MAX_ORDER,
    FD_DERIVATIVE_STEP,
    FD_DERIVATIVE_TOL,
    SUM_CHUNK_MAX,
    SUM_CHUNK_START,
)
from src.model.params import ModelParams, ReducedState, Regime
from src.utils.errors import DomainError, TruncationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumResult:
    """Suma parcial certificada de una serie de términos positivos."""

    value: float
    truncation_index: int
    tail_bound: float
    terms_evaluated: int


@dataclass(frozen=True)
class EmExpansion:
    """Desarrollo de Euler-MacLaurin truncado en el orden ``order``."""

    order: int
    boundary_term: float
    integral_term: float
    correction_terms: tuple[float, ...]
    value: float


def _scalar_or_array(values, like):
    if np.ndim(like) == 0:
        return float(values)
    return values


# ---------------------------------------------------------------------------
# Bernoulli
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n_max: int) -> tuple[Fraction, ...]:
    """B_0..B_{n_max} por la recurrencia sum_{j=0}^{m} C(m+1, j) B_j = 0."""
    table = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = sum(math.comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(two_p: int) -> Fraction:
    """
    Número de Bernoulli B_{2p} exacto.

    Args:
        two_p: Índice par, 2 <= two_p <= 20

    Returns:
        Fraction con el valor exacto (``float(...)`` da su imagen real)
    """
    if isinstance(two_p, bool) or not isinstance(two_p, int):
        raise DomainError(f"El índice de Bernoulli debe ser entero: {two_p!r}")
    if two_p % 2 or not 2 <= two_p <= BERNOULLI_MAX_INDEX:
        raise DomainError(f"Índice de Bernoulli fuera de rango (par, 2..{BERNOULLI_MAX_INDEX}): {two_p}")
    return _bernoulli_table(BERNOULLI_MAX_INDEX)[two_p]


# ---------------------------------------------------------------------------
# Suma directa
# ---------------------------------------------------------------------------


def direct_sum(
    term: Callable[[np.ndarray], np.ndarray],
    tail_bound: Callable[[np.ndarray], np.ndarray],
    rel_tol: float = DEFAULT_REL_TOL,
    k_max: int = DEFAULT_K_MAX,
) -> SumResult:
    """
    Suma sum_{k>=1} term(k) hasta el menor K con tail_bound(K) <= rel_tol·S_K.

    ``term`` y ``tail_bound`` reciben arrays de enteros y devuelven arrays.
    Los términos se evalúan por bloques crecientes y se acumulan en orden
    ascendente de k.

    Args:
        term: Término k-ésimo (>= 0, decreciente a partir de algún k)
        tail_bound: Cota superior de sum_{k>K} term(k); inf si no hay cota
        rel_tol: Tolerancia relativa de truncamiento
        k_max: Número máximo de términos

    Returns:
        SumResult con la suma parcial y su certificado de cola

    Raises:
        TruncationError: Si se alcanza k_max sin cumplir la tolerancia
    """
    if not rel_tol > 0:
        raise DomainError(f"rel_tol debe ser positivo: {rel_tol}")
    if k_max < 1:
        raise DomainError(f"k_max debe ser >= 1: {k_max}")

    total = 0.0
    start = 1
    chunk = SUM_CHUNK_START
    last_bound = math.inf

    while start <= k_max:
        stop = min(start + chunk - 1, k_max)
        k = np.arange(start, stop + 1, dtype=np.int64)
        terms = np.broadcast_to(np.asarray(term(k), dtype=float), k.shape)
        partial = total + np.cumsum(terms)
        bounds = np.broadcast_to(np.asarray(tail_bound(k), dtype=float), k.shape)

        done = np.flatnonzero(bounds <= rel_tol * partial)
        if done.size:
            i = int(done[0])
            result = SumResult(
                value=float(partial[i]),
                truncation_index=int(k[i]),
                tail_bound=float(bounds[i]),
                terms_evaluated=int(stop),
            )
            logger.debug(f"Suma directa truncada en K={result.truncation_index} (cola {result.tail_bound:.3e})")
            return result

        total = float(partial[-1])
        last_bound = float(bounds[-1])
        start = stop + 1
        chunk = min(2 * chunk, SUM_CHUNK_MAX)

    best = SumResult(value=total, truncation_index=int(k_max), tail_bound=last_bound, terms_evaluated=int(k_max))
    raise TruncationError(
        f"Se alcanzó k_max={k_max} sin cumplir rel_tol={rel_tol} (cola {last_bound:.3e}, suma {total:.6e})",
        best=best,
    )


# ---------------------------------------------------------------------------
# Euler-MacLaurin
# ---------------------------------------------------------------------------


def euler_maclaurin_sum(
    f1: float,
    integral_from_1: float,
    odd_derivs_at_1: Sequence[float],
    order: int = EM_MAX_ORDER,
) -> EmExpansion:
    """
    Ensambla sum_{k>=1} f(k) ~ f(1)/2 + int_1^inf f - sum_p B_2p/(2p)! f^(2p-1)(1).

    Args:
        f1: f(1)
        integral_from_1: int_1^inf f(x) dx
        odd_derivs_at_1: [f'(1), f'''(1), ...]
        order: Número de correcciones p_max (0 = sin correcciones)

    Returns:
        EmExpansion con los términos y su suma de izquierda a derecha
    """
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise DomainError(f"Orden de Euler-MacLaurin inválido: {order!r}")
    if 2 * order > BERNOULLI_MAX_INDEX:
        raise DomainError(f"Orden de Euler-MacLaurin demasiado alto: {order}")
    if len(odd_derivs_at_1) < order:
        raise DomainError(f"Se necesitan {order} derivadas impares y hay {len(odd_derivs_at_1)}")

    boundary = 0.5 * f1
    corrections = tuple(
        float(-bernoulli(2 * p) / math.factorial(2 * p)) * odd_derivs_at_1[p - 1]
        for p in range(1, order + 1)
    )

    value = boundary + integral_from_1
    for correction in corrections:
        value += correction

    return EmExpansion(
        order=order,
        boundary_term=boundary,
        integral_term=integral_from_1,
        correction_terms=corrections,
        value=value,
    )


# ---------------------------------------------------------------------------
# Integrales de cola
# ---------------------------------------------------------------------------


def _check_lower_limit(x0):
    x0 = np.asarray(x0, dtype=float)
    if x0.size and np.min(x0) < 1.0:
        raise DomainError(f"El límite inferior debe ser >= 1: {x0}")
    return x0


def tail_integral_nonrel(a: float, b_bar: float, x0=1.0):
    """
    int_{x0}^inf x(x+2) exp(-(a + b_bar·x)) dx en forma cerrada.

    Returns:
        exp(-(a + b_bar·x0))·[(x0² + 2x0)/b̄ + (2x0 + 2)/b̄² + 2/b̄³]
    """
    if not b_bar > 0:
        raise DomainError(f"b_bar debe ser positivo (integral divergente): {b_bar}")
    x = _check_lower_limit(x0)
    poly = (x * x + 2.0 * x) / b_bar + (2.0 * x + 2.0) / b_bar**2 + 2.0 / b_bar**3
    values = np.exp(-(a + b_bar * x)) * poly
    return _scalar_or_array(values, x0)


def tail_coefficients_rel(xi: float, x0=1.0) -> tuple:
    """
    Coeficientes c_1..c_6 de la cola relativista, sum_j c_j / b^j.

    Con u = sqrt(1 + 2·xi·x) el integrando pasa a ser
    Q(u) exp(-b·u) / (4 xi³), Q(u) = u⁵ + (4xi - 2)u³ + (1 - 4xi)u, y
    c_{j+1} = Q^(j)(u0) / (4 xi³). Cada coeficiente se escribe aquí en
    función de x0 y u0 sin restas.
    """
    if not xi > 0:
        raise DomainError(f"xi debe ser positivo: {xi}")
    x = _check_lower_limit(x0)
    u0 = np.sqrt(1.0 + 2.0 * xi * x)
    xi3 = xi**3
    return (
        u0 * x * (x + 2.0) / xi,
        (5.0 * xi * x * x + 6.0 * xi * x + 2.0 * x + 2.0) / xi**2,
        2.0 * u0 * (5.0 * xi * x + 3.0 * xi + 1.0) / xi3,
        (30.0 * xi * x + 6.0 * xi + 12.0) / xi3,
        30.0 * u0 / xi3,
        30.0 / xi3 + 0.0 * x,
    )


def tail_coefficients_rel_printed(xi: float, b5_numerator: float = 3.0) -> tuple:
    """Los seis coeficientes impresos de la cola en x0 = 1 (1/b⁵ con numerador 3)."""
    if not xi > 0:
        raise DomainError(f"xi debe ser positivo: {xi}")
    root = math.sqrt(1.0 + 2.0 * xi)
    xi3 = xi**3
    return (
        3.0 * root / xi,
        (11.0 * xi + 4.0) / xi**2,
        root * (16.0 * xi + 2.0) / xi3,
        (36.0 * xi + 12.0) / xi3,
        b5_numerator * root / xi3,
        30.0 / xi3,
    )


def tail_from_coefficients(a, b, u0, coefficients):
    """exp(-(a + b·u0))·sum_j c_j / b^j para una lista de coeficientes c_1..c_n."""
    poly = sum(c / b ** (j + 1) for j, c in enumerate(coefficients))
    return np.exp(-(a + b * u0)) * poly


def tail_integral_rel(a: float, b: float, xi: float, x0=1.0):
    """
    int_{x0}^inf x(x+2) exp(-(a + b·sqrt(1 + 2·xi·x))) dx en forma cerrada.

    Args:
        a: beta·mu·B (admite cualquier real, p. ej. un desplazamiento)
        b: beta·m0c2 > 0
        xi: Acoplamiento adimensional > 0
        x0: Límite inferior >= 1 (escalar o array)
    """
    if not b > 0:
        raise DomainError(f"b debe ser positivo: {b}")
    coefficients = tail_coefficients_rel(xi, x0)
    u0 = np.sqrt(1.0 + 2.0 * xi * np.asarray(x0, dtype=float))
    values = tail_from_coefficients(a, b, u0, coefficients)
    return _scalar_or_array(values, x0)


def tail_integral_rel_printed(a: float, b: float, xi: float, b5_numerator: float = 3.0) -> float:
    """Cola relativista en x0 = 1 evaluada con los coeficientes impresos."""
    if not b > 0:
        raise DomainError(f"b debe ser positivo: {b}")
    coefficients = tail_coefficients_rel_printed(xi, b5_numerator)
    return float(tail_from_coefficients(a, b, math.sqrt(1.0 + 2.0 * xi), coefficients))


# ---------------------------------------------------------------------------
# Sumandos y derivadas en x = 1
# ---------------------------------------------------------------------------


def rel_summand(x, a: float, b: float, xi: float):
    """f(x) = x(x+2) exp(-(a + b·sqrt(1 + 2·xi·x)))."""
    x = np.asarray(x, dtype=float)
    return x * (x + 2.0) * np.exp(-(a + b * np.sqrt(1.0 + 2.0 * xi * x)))


def nonrel_summand(x, a: float, b_bar: float):
    """f(x) = x(x+2) exp(-(a + b_bar·x))."""
    x = np.asarray(x, dtype=float)
    return x * (x + 2.0) * np.exp(-(a + b_bar * x))


def _check_order(max_order: int):
    if isinstance(max_order, bool) or not isinstance(max_order, int) or not 0 <= max_order <= EM_MAX_ORDER:
        raise DomainError(f"Orden de derivadas no soportado (máximo {EM_MAX_ORDER}): {max_order!r}")


def rel_odd_derivatives(a: float, b: float, xi: float, max_order: int = EM_MAX_ORDER) -> list[float]:
    """
    [f'(1), f'''(1)] del sumando relativista.

    f = p·g con p = x² + 2x y g = exp(-a - b·u), u = sqrt(1 + 2·xi·x);
    h = -b·u cumple h' = -b·xi/u, h'' = b·xi²/u³, h''' = -3b·xi³/u⁵.
    """
    _check_order(max_order)
    root = math.sqrt(1.0 + 2.0 * xi)
    g = math.exp(-(a + b * root))
    h1 = -b * xi / root
    h2 = b * xi**2 / root**3
    h3 = -3.0 * b * xi**3 / root**5
    p, p1, p2 = 3.0, 4.0, 2.0

    derivs = [(p1 + p * h1) * g]
    if max_order >= 2:
        g2 = h2 + h1 * h1
        g3 = h3 + 3.0 * h1 * h2 + h1**3
        derivs.append((3.0 * p2 * h1 + 3.0 * p1 * g2 + p * g3) * g)
    return derivs[:max_order]


def nonrel_odd_derivatives(a: float, b_bar: float, max_order: int = EM_MAX_ORDER) -> list[float]:
    """[f'(1), f'''(1)] = [(4 - 3b̄), (-3b̄³ + 12b̄² - 6b̄)]·exp(-(a + b̄))."""
    _check_order(max_order)
    g = math.exp(-(a + b_bar))
    derivs = [(4.0 - 3.0 * b_bar) * g, (-3.0 * b_bar**3 + 12.0 * b_bar**2 - 6.0 * b_bar) * g]
    return derivs[:max_order]


def finite_difference_odd_derivatives(
    f: Callable[[np.ndarray], np.ndarray],
    x: float,
    h: float,
    max_order: int = EM_MAX_ORDER,
) -> list[float]:
    """
    [f'(x), f'''(x)] por diferencias centrales de cuarto orden.

    f'   ~ (-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)) / (12h)
    f''' ~ (-f(x+3h) + 8f(x+2h) - 13f(x+h) + 13f(x-h) - 8f(x-2h) + f(x-3h)) / (8h³)
    """
    _check_order(max_order)
    offsets = np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0])
    fm3, fm2, fm1, fp1, fp2, fp3 = np.asarray(f(x + offsets * h), dtype=float)
    derivs = [
        (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h),
        (-fp3 + 8.0 * fp2 - 13.0 * fp1 + 13.0 * fm1 - 8.0 * fm2 + fm3) / (8.0 * h**3),
    ]
    return [float(d) for d in derivs[:max_order]]


def finite_difference_step(regime: Regime, b: float, xi: float) -> float:
    """Paso de diferencias finitas adaptado a la escala de variación de f en x = 1."""
    if Regime(regime) == Regime.RELATIVISTIC:
        rate = b * xi / math.sqrt(1.0 + 2.0 * xi)
    else:
        rate = b * xi
    return FD_DERIVATIVE_STEP / max(1.0, rate)


def em_derivatives(
    regime: Regime,
    params: ModelParams,
    state: ReducedState,
    max_order: int = EM_MAX_ORDER,
    verify: bool = True,
) -> list[float]:
    """
    Derivadas impares analíticas del sumando en x = 1.

    Args:
        regime: Régimen del espectro
        params: Parámetros físicos (aportan xi)
        state: Estado reducido (aporta a, b, b_bar)
        max_order: Número de derivadas (f', f''')
        verify: Si True, compara con diferencias finitas y avisa si difieren

    Returns:
        Lista [f'(1), f'''(1)] truncada a max_order
    """
    regime = Regime(regime)
    if regime == Regime.RELATIVISTIC:
        derivs = rel_odd_derivatives(state.a, state.b, params.xi, max_order)
        f = lambda x: rel_summand(x, state.a, state.b, params.xi)  # noqa: E731
        h = finite_difference_step(regime, state.b, params.xi)
    else:
        derivs = nonrel_odd_derivatives(state.a, state.b_bar, max_order)
        f = lambda x: nonrel_summand(x, state.a, state.b_bar)  # noqa: E731
        h = finite_difference_step(regime, state.b_bar, 1.0)

    if verify and max_order:
        numeric = finite_difference_odd_derivatives(f, 1.0, h, max_order)
        for order, (exact, approx) in enumerate(zip(derivs, numeric), start=1):
            deviation = abs(exact - approx) / max(1.0, abs(exact))
            if deviation > FD_DERIVATIVE_TOL:
                logger.warning(
                    f"Derivada {2 * order - 1} en x=1 difiere de diferencias finitas: "
                    f"{exact:.10e} vs {approx:.10e} (desviación {deviation:.2e})"
                )
    return derivs
