"""
Generador de gráficos SVG con matplotlib.
"""

import logging
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

from config.settings import OUTPUT_DIR, SERIES_COLORS, SVG_HASH_SALT

logger = logging.getLogger(__name__)

# SVG reproducible: ids internos fijos y sin fecha en los metadatos
plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
plt.rcParams["svg.fonttype"] = "none"


def generate_line_chart(
    df: pd.DataFrame,
    x: str,
    y: str,
    series: list[str],
    output_path: Optional[Path] = None,
    filename: str = "chart.svg",
    title: str = "",
    x_label: Optional[str] = None,
    y_label: Optional[str] = None,
    series_names: Optional[dict] = None,
) -> Path:
    """
    Genera un gráfico de líneas con una serie por combinación de ``series``.

    Args:
        df: Datos (una fila por punto)
        x: Columna del eje x
        y: Columna del eje y
        series: Columnas que identifican cada serie (p. ej. ["regime", "xi"])
        output_path: Ruta completa del SVG (por defecto OUTPUT_DIR / filename)
        filename: Nombre del archivo si no se da ``output_path``
        title: Título
        x_label: Etiqueta del eje x (por defecto ``x``)
        y_label: Etiqueta del eje y (por defecto ``y``)
        series_names: Nombre legible por clave de serie

    Returns:
        Path del archivo generado
    """
    filepath = Path(output_path) if output_path else OUTPUT_DIR / filename
    filepath.parent.mkdir(parents=True, exist_ok=True)
    series_names = series_names or {}

    fig, ax = plt.subplots(figsize=(8, 5))

    for i, (key, group) in enumerate(df.groupby(series, sort=True)):
        key = key if isinstance(key, tuple) else (key,)
        label = series_names.get(key) or ", ".join(f"{col}={val}" for col, val in zip(series, key))
        ax.plot(
            group[x].to_numpy(),
            group[y].to_numpy(),
            label=label,
            color=SERIES_COLORS[i % len(SERIES_COLORS)],
            linewidth=1.5,
        )

    ax.set_title(title, fontsize=13, fontweight="bold")
    ax.set_xlabel(x_label or x, fontsize=11)
    ax.set_ylabel(y_label or y, fontsize=11)
    ax.axhline(0.0, color="#95A5A6", linewidth=0.5)
    ax.legend(loc="best")

    plt.tight_layout()
    plt.savefig(filepath, format="svg", metadata={"Date": None})
    plt.close(fig)

    logger.info(f"Gráfico SVG generado: {filepath}")
    return filepath
