"""
Generador del informe Excel de comparación de vías.
"""

import logging
from pathlib import Path
from typing import Optional

import pandas as pd
from openpyxl import Workbook
from openpyxl.chart import LineChart, Reference
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils.dataframe import dataframe_to_rows

from config.settings import OUTPUT_DIR

logger = logging.getLogger(__name__)

HEADER_FILL = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
HEADER_FONT = Font(bold=True, color="FFFFFF")


def _style_header(ws, n_columns: int, row: int = 1):
    for c_idx in range(1, n_columns + 1):
        cell = ws.cell(row=row, column=c_idx)
        cell.font = HEADER_FONT
        cell.fill = HEADER_FILL
        cell.alignment = Alignment(horizontal="center")


def generate_comparison_workbook(
    df: pd.DataFrame,
    labels: list[str],
    output_path: Optional[Path] = None,
    filename: str = "comparacion.xlsx",
) -> Path:
    """
    Genera el libro Excel de una comparación de vías.

    Hoja "Comparación" con la tabla completa, hoja "Resumen" con la
    desviación máxima por pareja de vías y un gráfico de ln Z por vía.

    Args:
        df: Tabla producida por compare_methods
        labels: Etiquetas de las vías, en el orden de las columnas
        output_path: Ruta del libro (por defecto OUTPUT_DIR / filename)
        filename: Nombre del archivo si no se da ``output_path``

    Returns:
        Path del archivo generado
    """
    filepath = Path(output_path) if output_path else OUTPUT_DIR / filename
    filepath.parent.mkdir(parents=True, exist_ok=True)

    wb = Workbook()

    # Hoja 1: tabla completa
    ws_data = wb.active
    ws_data.title = "Comparación"
    for r_idx, row in enumerate(dataframe_to_rows(df, index=False, header=True), 1):
        for c_idx, value in enumerate(row, 1):
            ws_data.cell(row=r_idx, column=c_idx, value=value)
    _style_header(ws_data, len(df.columns))

    for column in ws_data.columns:
        width = max(len(str(cell.value)) for cell in column if cell.value is not None)
        ws_data.column_dimensions[column[0].column_letter].width = min(width + 2, 30)

    # Hoja 2: resumen de desviaciones
    ws_stats = wb.create_sheet("Resumen")
    ws_stats["A1"] = "DESVIACIÓN MÁXIMA ENTRE VÍAS"
    ws_stats["A1"].font = Font(bold=True, size=14)
    ws_stats.merge_cells("A1:B1")

    ws_stats["A3"] = "Pareja"
    ws_stats["B3"] = "max |Z_i/Z_j - 1|"
    _style_header(ws_stats, 2, row=3)

    row = 4
    for column in df.columns:
        if column.startswith("dev_"):
            ws_stats[f"A{row}"] = column[len("dev_"):]
            ws_stats[f"B{row}"] = float(df[column].max())
            row += 1

    ws_stats.column_dimensions["A"].width = 40
    ws_stats.column_dimensions["B"].width = 20

    # Gráfico de ln Z por vía
    ln_z_columns = [f"{label}_ln_z" for label in labels if f"{label}_ln_z" in df.columns]
    if ln_z_columns and len(df) > 0:
        chart = LineChart()
        chart.title = "ln Z por vía"
        chart.y_axis.title = "ln Z"
        chart.x_axis.title = "fila"
        chart.width = 18
        chart.height = 10
        for column in ln_z_columns:
            c_idx = list(df.columns).index(column) + 1
            data = Reference(ws_data, min_col=c_idx, min_row=1, max_row=len(df) + 1)
            chart.add_data(data, titles_from_data=True)
        ws_stats.add_chart(chart, "D3")

    wb.save(filepath)
    logger.info(f"Excel generado: {filepath}")

    return filepath
