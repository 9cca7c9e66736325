"""
Cuadratura adaptativa de referencia para integrales en [lower, inf).

El intervalo se parte en tramos geométricos de la escala de decaimiento del
integrando, cada tramo se integra con ``scipy.integrate.quad`` y el último
tramo llega hasta infinito.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from config.settings import QUAD_REL_TOL, QUAD_SEGMENTS, QUAD_SUBDIVISION_LIMIT
from src.utils.errors import AccuracyError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureResult:
    """Valor de la integral y estimación de su error absoluto."""

    value: float
    error: float
    segments: int

    @property
    def relative_error(self) -> float:
        return self.error / abs(self.value) if self.value else math.inf


def _breakpoints(lower: float, scale: float) -> list[float]:
    return [lower] + [lower + scale * m for m in QUAD_SEGMENTS] + [math.inf]


def _integrate_segments(integrand, points, epsabs, epsrel, limit):
    total = 0.0
    error = 0.0
    for left, right in zip(points[:-1], points[1:]):
        value, err = quad(integrand, left, right, epsabs=epsabs, epsrel=epsrel, limit=limit)
        total += value
        error += err
    return total, error


def quadrature_oracle(
    integrand: Callable[[float], float],
    lower: float,
    scale: float = 1.0,
    rel_tol: float = QUAD_REL_TOL,
    limit: int = QUAD_SUBDIVISION_LIMIT,
) -> QuadratureResult:
    """
    Integra ``integrand`` en [lower, inf) con error relativo <= rel_tol.

    Args:
        integrand: Función continua y absolutamente integrable
        lower: Límite inferior
        scale: Escala de decaimiento aproximada del integrando
        rel_tol: Error relativo objetivo
        limit: Subdivisiones máximas por tramo

    Returns:
        QuadratureResult con valor y error estimado

    Raises:
        AccuracyError: Si el error estimado supera rel_tol·|valor|
    """
    if not scale > 0:
        raise DomainError(f"La escala de la cuadratura debe ser positiva: {scale}")

    points = _breakpoints(float(lower), float(scale))

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        rough, _ = _integrate_segments(integrand, points, 0.0, 1e-6, limit)
        epsabs = 1e-3 * rel_tol * abs(rough)
        total, error = _integrate_segments(integrand, points, epsabs, 0.1 * rel_tol, limit)

    for warning in caught:
        logger.warning(f"Aviso de cuadratura: {warning.message}")

    if not (math.isfinite(total) and error <= rel_tol * abs(total)):
        raise AccuracyError(
            f"La cuadratura no alcanzó rel_tol={rel_tol}: valor {total:.12e}, error {error:.3e}",
            value=total,
            error=error,
        )

    logger.debug(f"Cuadratura: {total:.15e} ± {error:.2e}")
    return QuadratureResult(value=total, error=error, segments=len(points) - 1)


def tail_integral_rel_quad(a: float, b: float, xi: float, x0: float = 1.0, rel_tol: float = QUAD_REL_TOL) -> QuadratureResult:
    """
    Cola relativista por cuadratura, en la variable u = sqrt(1 + 2·xi·x).

    El integrando es f(x(u))·dx/du con x = (u² - 1)/(2xi), dx/du = u/xi.
    """
    if not (b > 0 and xi > 0):
        raise DomainError(f"Se requiere b > 0 y xi > 0 (b={b}, xi={xi})")

    def integrand(u):
        x = (u * u - 1.0) / (2.0 * xi)
        return x * (x + 2.0) * np.exp(-(a + b * u)) * u / xi

    u0 = math.sqrt(1.0 + 2.0 * xi * x0)
    return quadrature_oracle(integrand, u0, scale=1.0 / b, rel_tol=rel_tol)


def tail_integral_nonrel_quad(a: float, b_bar: float, x0: float = 1.0, rel_tol: float = QUAD_REL_TOL) -> QuadratureResult:
    """Cola no relativista por cuadratura directa en x."""
    if not b_bar > 0:
        raise DomainError(f"b_bar debe ser positivo: {b_bar}")

    def integrand(x):
        return x * (x + 2.0) * np.exp(-(a + b_bar * x))

    return quadrature_oracle(integrand, x0, scale=1.0 / b_bar, rel_tol=rel_tol)
