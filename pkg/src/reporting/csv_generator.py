"""
Generador de ficheros CSV.
"""

import logging
from pathlib import Path
from typing import Optional

import pandas as pd

from config.settings import CSV_ENCODING, CSV_FLOAT_FORMAT, OUTPUT_DIR, SWEEP_COLUMNS

logger = logging.getLogger(__name__)


def rows_to_dataframe(
    rows: list[dict],
    columns: Optional[list[str]] = None,
    sort_by: Optional[list[str]] = None,
) -> pd.DataFrame:
    """
    Convierte una lista de filas a DataFrame con columnas y orden fijos.

    Args:
        rows: Filas como diccionarios
        columns: Orden de columnas (por defecto SWEEP_COLUMNS)
        sort_by: Columnas de ordenación; el orden final no depende del orden
            de evaluación de las filas

    Returns:
        DataFrame con los datos
    """
    columns = columns or SWEEP_COLUMNS
    df = pd.DataFrame(rows, columns=columns)
    if sort_by:
        df = df.sort_values(sort_by, kind="mergesort").reset_index(drop=True)
    return df


def generate_csv(
    df: pd.DataFrame,
    filepath: Optional[Path] = None,
    filename: str = "sweep.csv",
) -> Path:
    """
    Escribe un DataFrame como CSV determinista.

    12 cifras significativas, separador ',', fin de línea LF, UTF-8 sin BOM
    y fila de cabecera.

    Args:
        df: Datos a escribir
        filepath: Ruta del fichero (por defecto OUTPUT_DIR / filename)
        filename: Nombre del fichero si no se da ``filepath``

    Returns:
        Path del archivo generado
    """
    filepath = Path(filepath) if filepath else OUTPUT_DIR / filename
    filepath.parent.mkdir(parents=True, exist_ok=True)

    df.to_csv(
        filepath,
        index=False,
        float_format=CSV_FLOAT_FORMAT,
        lineterminator="\n",
        encoding=CSV_ENCODING,
    )

    logger.info(f"CSV generado: {filepath} ({len(df)} filas)")
    return filepath


def read_csv(filepath: Path) -> pd.DataFrame:
    """Lee un CSV generado por este módulo."""
    return pd.read_csv(filepath, encoding=CSV_ENCODING)
