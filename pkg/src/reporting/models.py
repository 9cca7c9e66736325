"""
Modelos de datos de los barridos: configuración y especificación de figuras.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

import numpy as np

from config.settings import (
    DEFAULT_K_MAX,
    DEFAULT_POINTS,
    DEFAULT_REL_TOL,
    DEFAULT_TAU_MAX,
    DEFAULT_TAU_MIN,
    DEFAULT_WORKERS,
    DEFAULT_XI_VALUES,
    ELECTRON_REST_ENERGY_SI,
)
from src.analysis.partition import Method
from src.model.params import ModelParams, Regime, UnitMode, UnitsSystem
from src.utils.errors import DiracThermoError, UsageError

METHOD_ALIASES = {
    "euler-maclaurin": Method.EULER_MACLAURIN.value,
}

TRUE_VALUES = {"1", "true", "yes", "si", "sí", "on"}
FALSE_VALUES = {"0", "false", "no", "off", ""}


def _parse_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in TRUE_VALUES:
        return True
    if text in FALSE_VALUES:
        return False
    raise UsageError(f"Valor booleano inválido para '{key}': {value!r}")


def _parse_float(key: str, value: Any) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise UsageError(f"Valor numérico inválido para '{key}': {value!r}")
    if not math.isfinite(number):
        raise UsageError(f"'{key}' debe ser finito: {value!r}")
    return number


def _parse_int(key: str, value: Any) -> int:
    if isinstance(value, bool):
        raise UsageError(f"Valor entero inválido para '{key}': {value!r}")
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise UsageError(f"Valor entero inválido para '{key}': {value!r}")
    if not number.is_integer():
        raise UsageError(f"'{key}' debe ser entero: {value!r}")
    return int(number)


def _as_list(value: Any) -> list:
    if isinstance(value, (list, tuple)):
        items = []
        for item in value:
            items.extend(_as_list(item))
        return items
    return [part.strip() for part in str(value).split(",") if part.strip()]


def parse_method(value: Any) -> Method:
    """Convierte una etiqueta de vía (admite ``euler-maclaurin``) en Method."""
    text = str(value.value if isinstance(value, Method) else value).strip().lower()
    text = METHOD_ALIASES.get(text, text)
    try:
        return Method(text)
    except ValueError:
        valid = ", ".join(m.value for m in Method)
        raise UsageError(f"Vía desconocida '{value}' (válidas: {valid}, euler-maclaurin)")


@dataclass(frozen=True)
class SweepConfig:
    """Configuración de un barrido en tau para varios valores de xi."""

    regime: Regime = Regime.RELATIVISTIC
    methods: tuple[Method, ...] = (Method.DIRECT,)
    tau_min: float = DEFAULT_TAU_MIN
    tau_max: float = DEFAULT_TAU_MAX
    points: int = DEFAULT_POINTS
    spacing: str = "linear"
    xi_values: tuple[float, ...] = DEFAULT_XI_VALUES
    mu_b: float = 0.0
    n_particles: int = 1
    rel_tol: float = DEFAULT_REL_TOL
    k_max: int = DEFAULT_K_MAX
    output: Optional[Path] = None
    emit_svg: bool = False
    printed_coefficients: bool = False
    units: UnitMode = UnitMode.NATURAL
    m0c2: Optional[float] = None
    workers: int = DEFAULT_WORKERS
    xlsx: Optional[Path] = None

    def __post_init__(self):
        if self.points < 2:
            raise UsageError(f"'points' debe ser >= 2: {self.points}")
        if not 0 < self.tau_min < self.tau_max:
            raise UsageError(f"Se requiere 0 < tau_min < tau_max (tau_min={self.tau_min}, tau_max={self.tau_max})")
        if self.spacing not in ("linear", "log"):
            raise UsageError(f"'spacing' debe ser linear o log: {self.spacing}")
        if not self.xi_values:
            raise UsageError("La lista de 'xi' está vacía")
        if any(not xi > 0 for xi in self.xi_values):
            raise UsageError(f"Todos los valores de 'xi' deben ser positivos: {list(self.xi_values)}")
        if not self.methods:
            raise UsageError("No se ha indicado ninguna vía en 'method'")
        if self.regime == Regime.RELATIVISTIC and Method.EXACT_CLOSED_FORM in self.methods:
            raise UsageError("'method' exact-nr solo es válido con regime=nonrel")
        if self.mu_b < 0:
            raise UsageError(f"'mu_b' debe ser >= 0: {self.mu_b}")
        if self.n_particles < 1:
            raise UsageError(f"'n_particles' debe ser >= 1: {self.n_particles}")
        if not self.rel_tol > 0:
            raise UsageError(f"'rel_tol' debe ser positivo: {self.rel_tol}")
        if self.k_max < 1:
            raise UsageError(f"'k_max' debe ser >= 1: {self.k_max}")
        if self.workers < 1:
            raise UsageError(f"'workers' debe ser >= 1: {self.workers}")
        if self.units == UnitMode.NATURAL and self.m0c2 not in (None, 1.0):
            raise UsageError(f"'m0c2' solo puede fijarse con units=si (recibido {self.m0c2})")
        if self.m0c2 is not None and not self.m0c2 > 0:
            raise UsageError(f"'m0c2' debe ser positivo: {self.m0c2}")

    @property
    def method(self) -> Method:
        """Vía principal (la primera de ``methods``)."""
        return self.methods[0]

    @property
    def rest_energy(self) -> float:
        if self.units == UnitMode.SI:
            return self.m0c2 if self.m0c2 is not None else ELECTRON_REST_ENERGY_SI
        return 1.0

    def tau_grid(self) -> np.ndarray:
        """Rejilla de temperaturas reducidas (lineal o logarítmica)."""
        if self.spacing == "log":
            return np.geomspace(self.tau_min, self.tau_max, self.points)
        return np.linspace(self.tau_min, self.tau_max, self.points)

    def params_for(self, xi: float, regime: Optional[Regime] = None) -> ModelParams:
        """ModelParams del barrido para un valor de xi."""
        units = UnitsSystem.si() if self.units == UnitMode.SI else UnitsSystem.natural()
        try:
            return ModelParams(
                mu=self.mu_b,
                B=1.0,
                m0c2=self.rest_energy,
                xi=float(xi),
                n_particles=self.n_particles,
                regime=regime or self.regime,
                units=units,
            )
        except DiracThermoError as e:
            raise UsageError(f"Parámetros inválidos para xi={xi}: {e}")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SweepConfig":
        """
        Crea la configuración desde un diccionario de valores (CLI o fichero).

        Las claves admiten ``-`` o ``_``. Los valores pueden venir como
        cadenas; toda conversión y validación ocurre aquí.

        Raises:
            UsageError: Clave desconocida o valor inválido (el mensaje nombra la clave)
        """
        values = {str(key).replace("-", "_"): value for key, value in data.items() if value is not None}
        kwargs: dict[str, Any] = {}

        for key, value in values.items():
            if key == "regime":
                try:
                    kwargs["regime"] = Regime(str(value.value if isinstance(value, Regime) else value).strip().lower())
                except ValueError:
                    raise UsageError(f"'regime' debe ser rel o nonrel: {value!r}")
            elif key in ("method", "methods"):
                kwargs["methods"] = tuple(parse_method(item) for item in _as_list(value))
            elif key in ("tau_min", "tau_max", "mu_b", "rel_tol"):
                kwargs[key] = _parse_float(key, value)
            elif key in ("points", "n_particles", "k_max", "workers"):
                kwargs[key] = _parse_int(key, value)
            elif key in ("xi", "xi_values"):
                kwargs["xi_values"] = tuple(_parse_float("xi", item) for item in _as_list(value))
            elif key == "spacing":
                kwargs["spacing"] = str(value).strip().lower()
            elif key in ("out", "output"):
                kwargs["output"] = Path(value)
            elif key == "xlsx":
                kwargs["xlsx"] = Path(value)
            elif key in ("svg", "emit_svg"):
                kwargs["emit_svg"] = _parse_bool(key, value)
            elif key in ("printed_coefficients", "paper_literal"):
                kwargs["printed_coefficients"] = _parse_bool(key, value)
            elif key == "units":
                try:
                    kwargs["units"] = UnitMode(str(value.value if isinstance(value, UnitMode) else value).strip().lower())
                except ValueError:
                    raise UsageError(f"'units' debe ser natural o si: {value!r}")
            elif key == "m0c2":
                kwargs["m0c2"] = _parse_float(key, value)
            else:
                raise UsageError(f"Clave de configuración desconocida: '{key}'")

        return cls(**kwargs)


@dataclass(frozen=True)
class FigureSpec:
    """Figura reproducible: magnitud, regímenes y valores de xi."""

    id: str
    title: str
    quantity: str
    regimes: tuple[Regime, ...]
    y_label: str
    xi_values: tuple[float, ...] = DEFAULT_XI_VALUES
    method: Method = Method.HIGH_T
    series_labels: dict = field(default_factory=dict)


FIGURES = {
    "free-energy-rel": FigureSpec(
        id="free-energy-rel",
        title="Energía libre de Helmholtz (relativista)",
        quantity="F_bar",
        regimes=(Regime.RELATIVISTIC,),
        y_label="F/(N m0c²)",
    ),
    "entropy-rel": FigureSpec(
        id="entropy-rel",
        title="Entropía (relativista)",
        quantity="S_bar",
        regimes=(Regime.RELATIVISTIC,),
        y_label="S/(N k_B)",
    ),
    "free-energy-nonrel": FigureSpec(
        id="free-energy-nonrel",
        title="Energía libre de Helmholtz (no relativista)",
        quantity="F_bar",
        regimes=(Regime.NONRELATIVISTIC,),
        y_label="F/N",
    ),
    "entropy-nonrel": FigureSpec(
        id="entropy-nonrel",
        title="Entropía (no relativista)",
        quantity="S_bar",
        regimes=(Regime.NONRELATIVISTIC,),
        y_label="S/(N k_B)",
    ),
    "mean-energy": FigureSpec(
        id="mean-energy",
        title="Energía media",
        quantity="U_bar",
        regimes=(Regime.RELATIVISTIC, Regime.NONRELATIVISTIC),
        y_label="U/N",
        xi_values=(1.0,),
        series_labels={Regime.RELATIVISTIC: "relativista (6τ)", Regime.NONRELATIVISTIC: "no relativista (3τ)"},
    ),
}

FIGURE_ALIASES = {
    "fig1": "free-energy-rel",
    "fig2": "entropy-rel",
    "fig3a": "free-energy-nonrel",
    "fig3b": "entropy-nonrel",
    "fig4": "mean-energy",
}


def get_figure(figure_id: str) -> FigureSpec:
    """Busca una figura por su id (o por su alias figN)."""
    key = FIGURE_ALIASES.get(figure_id, figure_id)
    if key not in FIGURES:
        valid = ", ".join(list(FIGURES) + list(FIGURE_ALIASES))
        raise UsageError(f"Figura desconocida '{figure_id}' (válidas: {valid})")
    return FIGURES[key]
