"""
Barridos en temperatura, reproducción de figuras, comparación de vías y
auditoría de la identidad U = F + T·S sobre ficheros emitidos.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from itertools import combinations
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from config.settings import (
    FLAG_OK,
    IDENTITY_TOL_CLOSED_FORM,
    IDENTITY_TOL_SERIES,
    OUTPUT_DIR,
    QUANTITY_COLUMNS,
    SWEEP_COLUMNS,
)
from src.analysis.partition import Method, log_z_n
from src.analysis.thermo import reduce, thermodynamics
from src.model.params import Regime
from src.reporting.charts import generate_line_chart
from src.reporting.csv_generator import generate_csv, read_csv, rows_to_dataframe
from src.reporting.excel_generator import generate_comparison_workbook
from src.reporting.models import FigureSpec, SweepConfig, get_figure
from src.utils.errors import UsageError

logger = logging.getLogger(__name__)

PRINTED_LABEL = "em-printed"
SORT_COLUMNS = ["regime", "xi", "tau"]


def evaluate_point(
    config: SweepConfig,
    method: Method,
    regime: Regime,
    xi: float,
    tau: float,
    printed_coefficients: bool = False,
) -> dict:
    """
    Evalúa una vía en un punto (xi, tau) y devuelve la fila del CSV.

    Returns:
        Diccionario con las columnas de SWEEP_COLUMNS
    """
    params = config.params_for(xi, regime)
    T = float(tau) * params.characteristic_temperature
    q = thermodynamics(
        method,
        regime,
        params,
        T,
        rel_tol=config.rel_tol,
        k_max=config.k_max,
        printed_coefficients=printed_coefficients,
    )
    reduced = reduce(q, params)

    return {
        "regime": regime.value,
        "method": PRINTED_LABEL if printed_coefficients else method.value,
        "tau": float(tau),
        "xi": float(xi),
        "mu_b": params.mu_b,
        "ln_z": log_z_n(q.log_z, params.n_particles),
        "F_bar": reduced.F_bar,
        "U_bar": reduced.U_bar,
        "S_bar": reduced.S_bar,
        "Cv_bar": reduced.Cv_bar,
        "validity_flag": reduced.validity_flag,
    }


def _evaluate_grid(config: SweepConfig, tasks: list[tuple], worker) -> list:
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            return list(executor.map(lambda task: worker(*task), tasks))
    return [worker(*task) for task in tasks]


def sweep_frame(config: SweepConfig, regimes: Optional[tuple[Regime, ...]] = None) -> pd.DataFrame:
    """
    Tabla del barrido: una fila por (régimen, xi, tau) con la vía principal.

    Las filas se ordenan por (régimen, xi, tau) independientemente del orden
    de evaluación.
    """
    regimes = regimes or (config.regime,)
    taus = config.tau_grid()
    tasks = [(regime, xi, tau) for regime in regimes for xi in config.xi_values for tau in taus]

    logger.info(
        f"Barrido {config.method.value} en {len(tasks)} puntos "
        f"(tau en [{config.tau_min}, {config.tau_max}], xi={list(config.xi_values)})"
    )

    def worker(regime, xi, tau):
        printed = (
            config.printed_coefficients
            and config.method == Method.EULER_MACLAURIN
            and regime == Regime.RELATIVISTIC
        )
        return evaluate_point(config, config.method, regime, xi, tau, printed)

    rows = _evaluate_grid(config, tasks, worker)
    df = rows_to_dataframe(rows, SWEEP_COLUMNS, sort_by=SORT_COLUMNS)

    flagged = int((df["validity_flag"] != FLAG_OK).sum())
    if flagged:
        logger.warning(f"{flagged} puntos fuera de la ventana de validez de alta temperatura")
    return df


def _sweep_charts(df: pd.DataFrame, csv_path: Path) -> list[Path]:
    paths = []
    for column in ("F_bar", "U_bar", "S_bar", "Cv_bar"):
        paths.append(
            generate_line_chart(
                df,
                x="tau",
                y=column,
                series=["regime", "xi"],
                output_path=csv_path.with_name(f"{csv_path.stem}_{column}.svg"),
                title=f"{column} ({df['method'].iloc[0]})",
                x_label="τ = k_B T / m0c²",
            )
        )
    return paths


def run_sweep(config: SweepConfig) -> Path:
    """
    Ejecuta un barrido y escribe el CSV (y los SVG si ``emit_svg``).

    Returns:
        Path del CSV generado
    """
    df = sweep_frame(config)
    csv_path = generate_csv(df, config.output or OUTPUT_DIR / f"sweep_{config.regime.value}_{config.method.value}.csv")
    if config.emit_svg:
        _sweep_charts(df, csv_path)
    return csv_path


# ---------------------------------------------------------------------------
# Figuras
# ---------------------------------------------------------------------------


def figure_frame(figure: FigureSpec, config: Optional[SweepConfig] = None) -> pd.DataFrame:
    """
    Datos de una figura: formas cerradas de alta temperatura.

    La figura fija régimen, vía y valores de xi; la rejilla, mu·B, N y las
    unidades salen de ``config``.
    """
    fig_config = replace(
        config or SweepConfig(),
        regime=figure.regimes[0],
        methods=(figure.method,),
        xi_values=figure.xi_values,
    )
    return sweep_frame(fig_config, regimes=figure.regimes)


def emit_figure(
    figure_id: str,
    out_dir: Optional[Path] = None,
    svg: bool = False,
    config: Optional[SweepConfig] = None,
) -> list[Path]:
    """
    Genera los datos de una figura (CSV) y, opcionalmente, su SVG.

    Args:
        figure_id: Id de la figura (p. ej. ``entropy-rel`` o ``fig2``)
        out_dir: Directorio de salida (por defecto OUTPUT_DIR)
        svg: Si True, genera también el gráfico
        config: Rejilla alternativa (tau_min, tau_max, points, spacing)

    Returns:
        Lista de paths generados (CSV primero)
    """
    figure = get_figure(figure_id)
    out_dir = Path(out_dir) if out_dir else OUTPUT_DIR
    df = figure_frame(figure, config)

    paths = [generate_csv(df, out_dir / f"{figure.id}.csv")]
    if svg:
        names = {(regime.value, xi): label for regime, label in figure.series_labels.items() for xi in figure.xi_values}
        if not names:
            names = {(regime.value, xi): f"ξ = {xi:g}" for regime in figure.regimes for xi in figure.xi_values}
        paths.append(
            generate_line_chart(
                df,
                x="tau",
                y=figure.quantity,
                series=["regime", "xi"],
                output_path=out_dir / f"{figure.id}.svg",
                title=figure.title,
                x_label="τ = k_B T / m0c²",
                y_label=figure.y_label,
                series_names=names,
            )
        )
    return paths


# ---------------------------------------------------------------------------
# Comparación de vías
# ---------------------------------------------------------------------------


def _method_labels(config: SweepConfig) -> list[tuple[str, Method, bool]]:
    """Etiquetas únicas por vía; una vía repetida recibe sufijo .1, .2, ..."""
    entries = [(m.value, m, False) for m in config.methods]
    if config.printed_coefficients and config.regime == Regime.RELATIVISTIC:
        entries.append((PRINTED_LABEL, Method.EULER_MACLAURIN, True))

    seen: dict[str, int] = {}
    labelled = []
    for label, method, printed in entries:
        count = seen.get(label, 0)
        seen[label] = count + 1
        labelled.append((label if count == 0 else f"{label}.{count}", method, printed))
    return labelled


def relative_deviation(log_z_i, log_z_j):
    """|Z_i/Z_j - 1| calculado en espacio logarítmico."""
    return np.abs(np.expm1(np.asarray(log_z_i, dtype=float) - np.asarray(log_z_j, dtype=float)))


def add_deviation_columns(df: pd.DataFrame, labels: list[str]) -> pd.DataFrame:
    """Añade las columnas dev_<i>_vs_<j> para cada pareja de vías."""
    for first, second in combinations(labels, 2):
        df[f"dev_{first}_vs_{second}"] = relative_deviation(df[f"{first}_ln_z"], df[f"{second}_ln_z"])
    return df


def comparison_frame(config: SweepConfig) -> tuple[pd.DataFrame, list[str]]:
    """Tabla de comparación y etiquetas de las vías comparadas."""
    labelled = _method_labels(config)
    if len(labelled) < 2:
        raise UsageError("La comparación necesita al menos dos vías en 'method'")

    taus = config.tau_grid()
    tasks = [(xi, tau) for xi in config.xi_values for tau in taus]
    logger.info(f"Comparación de {[label for label, _, _ in labelled]} en {len(tasks)} puntos")

    def worker(xi, tau):
        row = {"regime": config.regime.value, "tau": float(tau), "xi": float(xi), "mu_b": config.mu_b}
        for label, method, printed in labelled:
            point = evaluate_point(config, method, config.regime, xi, tau, printed)
            for column in QUANTITY_COLUMNS + ["validity_flag"]:
                row[f"{label}_{column}"] = point[column]
        return row

    rows = _evaluate_grid(config, tasks, worker)
    labels = [label for label, _, _ in labelled]
    columns = ["regime", "tau", "xi", "mu_b"] + [
        f"{label}_{column}" for label in labels for column in QUANTITY_COLUMNS + ["validity_flag"]
    ]
    df = rows_to_dataframe(rows, columns, sort_by=SORT_COLUMNS)
    return add_deviation_columns(df, labels), labels


def compare_methods(config: SweepConfig) -> Path:
    """
    Compara varias vías en la misma rejilla y escribe el CSV de desviaciones.

    Con ``config.xlsx`` genera además el libro Excel de comparación.

    Returns:
        Path del CSV generado
    """
    df, labels = comparison_frame(config)
    csv_path = generate_csv(df, config.output or OUTPUT_DIR / f"compare_{config.regime.value}.csv")

    for column in df.columns:
        if column.startswith("dev_"):
            logger.info(f"  max {column[4:]}: {df[column].max():.3e}")

    if config.xlsx:
        generate_comparison_workbook(df, labels, config.xlsx)
    return csv_path


# ---------------------------------------------------------------------------
# Auditoría
# ---------------------------------------------------------------------------


def identity_tolerance(method: str) -> float:
    """Tolerancia de U = F + T·S según la vía."""
    if method in (Method.HIGH_T.value, Method.EXACT_CLOSED_FORM.value):
        return IDENTITY_TOL_CLOSED_FORM
    return IDENTITY_TOL_SERIES


def audit_identity(csv_path: Path, m0c2: float = 1.0) -> pd.DataFrame:
    """
    Relee un CSV de barrido y devuelve las filas que violan U = F + T·S.

    En el régimen relativista las energías están divididas por m0c2 y el
    factor térmico es tau; en el no relativista las energías no están
    reducidas y el factor es k_B·T = tau·m0c2.

    Returns:
        DataFrame con las filas infractoras y su columna ``identity_residual``
    """
    df = read_csv(csv_path)
    thermal = np.where(df["regime"] == Regime.RELATIVISTIC.value, df["tau"], df["tau"] * m0c2)
    ts = thermal * df["S_bar"]
    scale = np.maximum.reduce([df["U_bar"].abs(), df["F_bar"].abs(), np.abs(ts)])
    scale = np.where(scale > 0, scale, 1.0)

    df["identity_residual"] = np.abs(df["U_bar"] - (df["F_bar"] + ts)) / scale
    tolerance = df["method"].map(identity_tolerance)
    violations = df[df["identity_residual"] > tolerance]

    if len(violations):
        logger.warning(f"Auditoría de {csv_path}: {len(violations)} filas violan U = F + T·S")
    else:
        logger.info(f"Auditoría de {csv_path}: {len(df)} filas cumplen U = F + T·S")
    return violations

