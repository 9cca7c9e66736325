"""
Modelos de datos: parámetros físicos, estado reducido y sistema de unidades.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from config.settings import BOLTZMANN_SI, ELECTRON_REST_ENERGY_SI
from src.utils.errors import DomainError


class Regime(str, Enum):
    """Régimen del espectro de energías."""

    RELATIVISTIC = "rel"
    NONRELATIVISTIC = "nonrel"


class UnitMode(str, Enum):
    """Convención de unidades."""

    NATURAL = "natural"
    SI = "si"


@dataclass(frozen=True)
class UnitsSystem:
    """
    Sistema de unidades y factores de conversión a SI.

    En modo natural (hbar = c = k_B = m0 = 1) la unidad de energía es la
    energía en reposo ``rest_energy_si`` (J) y la de temperatura
    ``rest_energy_si / k_B`` (K). En modo SI ambos factores valen 1.
    """

    mode: UnitMode = UnitMode.NATURAL
    boltzmann: float = 1.0
    energy_scale: float = ELECTRON_REST_ENERGY_SI
    temperature_scale: float = ELECTRON_REST_ENERGY_SI / BOLTZMANN_SI

    @classmethod
    def natural(cls, rest_energy_si: float = ELECTRON_REST_ENERGY_SI) -> "UnitsSystem":
        if rest_energy_si <= 0:
            raise DomainError(f"Energía en reposo no positiva: {rest_energy_si}")
        return cls(
            mode=UnitMode.NATURAL,
            boltzmann=1.0,
            energy_scale=rest_energy_si,
            temperature_scale=rest_energy_si / BOLTZMANN_SI,
        )

    @classmethod
    def si(cls) -> "UnitsSystem":
        return cls(mode=UnitMode.SI, boltzmann=BOLTZMANN_SI, energy_scale=1.0, temperature_scale=1.0)

    def energy_to_si(self, energy: float) -> float:
        return energy * self.energy_scale

    def energy_from_si(self, energy_si: float) -> float:
        return energy_si / self.energy_scale

    def temperature_to_si(self, temperature: float) -> float:
        return temperature * self.temperature_scale

    def temperature_from_si(self, temperature_si: float) -> float:
        return temperature_si / self.temperature_scale


@dataclass(frozen=True)
class ModelParams:
    """
    Parámetros físicos de la partícula neutra con momento dipolar magnético.

    Basta con dar ``xi`` o ``xi_bar``; el otro se completa con
    ``xi_bar = xi * m0c2``. Si se dan ambos deben ser coherentes.
    Las ramas sigma = s = +1 y delta = -1 son las únicas admitidas.
    """

    mu: float = 0.0
    B: float = 0.0
    m0c2: float = 1.0
    xi: Optional[float] = None
    xi_bar: Optional[float] = None
    n_particles: int = 1
    regime: Regime = Regime.RELATIVISTIC
    sigma: int = 1
    delta: int = -1
    s: int = 1
    units: UnitsSystem = field(default_factory=UnitsSystem.natural)

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime(self.regime))

        if self.sigma != 1 or self.s != 1 or self.delta != -1:
            raise DomainError(
                f"Solo se admite la rama sigma=+1, s=+1, delta=-1 "
                f"(recibido sigma={self.sigma}, s={self.s}, delta={self.delta})"
            )
        if not self.m0c2 > 0:
            raise DomainError(f"m0c2 debe ser positivo: {self.m0c2}")
        if self.units.mode == UnitMode.NATURAL and self.m0c2 != 1.0:
            raise DomainError(f"En unidades naturales m0c2 = 1 (recibido {self.m0c2})")
        if isinstance(self.n_particles, bool) or not isinstance(self.n_particles, int) or self.n_particles < 1:
            raise DomainError(f"n_particles debe ser un entero >= 1: {self.n_particles}")
        if self.mu * self.B < 0:
            raise DomainError(f"Se requiere mu·B >= 0 (recibido {self.mu * self.B})")

        xi, xi_bar = self.xi, self.xi_bar
        if xi is None and xi_bar is None:
            raise DomainError("Hay que indicar xi o xi_bar")
        if xi is None:
            xi = xi_bar / self.m0c2
        elif xi_bar is None:
            xi_bar = xi * self.m0c2
        elif not math.isclose(xi_bar, xi * self.m0c2, rel_tol=1e-12):
            raise DomainError(f"xi_bar ({xi_bar}) no coincide con xi·m0c2 ({xi * self.m0c2})")
        if not (xi > 0 and xi_bar > 0):
            raise DomainError(f"xi y xi_bar deben ser positivos: xi={xi}, xi_bar={xi_bar}")
        object.__setattr__(self, "xi", float(xi))
        object.__setattr__(self, "xi_bar", float(xi_bar))

    @property
    def mu_b(self) -> float:
        """Desplazamiento mu·B de todos los niveles."""
        return self.mu * self.B

    @property
    def boltzmann(self) -> float:
        return self.units.boltzmann

    @property
    def characteristic_temperature(self) -> float:
        """T0 = m0c2 / k_B."""
        return self.m0c2 / self.units.boltzmann

    def with_regime(self, regime: Regime) -> "ModelParams":
        """Copia de los parámetros en otro régimen."""
        return ModelParams(
            mu=self.mu,
            B=self.B,
            m0c2=self.m0c2,
            xi=self.xi,
            xi_bar=self.xi_bar,
            n_particles=self.n_particles,
            regime=regime,
            units=self.units,
        )

    def with_field(self, mu: float, B: float) -> "ModelParams":
        """Copia de los parámetros con otro momento dipolar y otro campo."""
        return ModelParams(
            mu=mu,
            B=B,
            m0c2=self.m0c2,
            xi=self.xi,
            xi_bar=self.xi_bar,
            n_particles=self.n_particles,
            regime=self.regime,
            units=self.units,
        )


@dataclass(frozen=True)
class ReducedState:
    """Variables térmicas adimensionales a una temperatura dada."""

    T: float
    beta: float
    tau: float
    T0: float
    a: float
    b: float
    b_bar: float
    x: float
