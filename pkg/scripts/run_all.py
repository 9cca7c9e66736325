#!/usr/bin/env python3
"""
Interfaz de línea de comandos: barridos, figuras, comparación de vías y
validación.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

# Añadir el directorio raíz al path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import LOG_FORMAT
from src.analysis.validation import validate
from src.reporting.models import SweepConfig, get_figure
from src.reporting.sweep import compare_methods, emit_figure, run_sweep
from src.utils.config_file import read_config_file
from src.utils.errors import EXIT_OK, UsageError, ValidationFailure, exit_code_for

logger = logging.getLogger(__name__)

EPILOG = """
Ejemplos de uso:

  # Barrido relativista por la forma de alta temperatura
  python scripts/run_all.py sweep --regime rel --method high-t --xi 1 --xi 5

  # Datos y gráfico de la entropía relativista
  python scripts/run_all.py figure entropy-rel --svg

  # Comparar suma directa y Euler-MacLaurin
  python scripts/run_all.py compare --method direct --method em --tau-min 0.5

  # Batería de validación
  python scripts/run_all.py validate
"""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser que convierte los errores de uso en UsageError."""

    def error(self, message):
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS: solo llegan al diccionario las opciones escritas por el usuario
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--regime", choices=["rel", "nonrel"], help="Régimen del espectro")
    common.add_argument(
        "--method",
        action="append",
        help="Vía: direct, em (o euler-maclaurin), high-t, exact-nr (repetible en compare)",
    )
    common.add_argument("--tau-min", help="Temperatura reducida mínima")
    common.add_argument("--tau-max", help="Temperatura reducida máxima")
    common.add_argument("--points", help="Número de puntos de la rejilla")
    common.add_argument("--spacing", choices=["linear", "log"], help="Espaciado de la rejilla")
    common.add_argument("--xi", action="append", help="Valor de xi (repetible)")
    common.add_argument("--mu-b", help="Desplazamiento mu·B")
    common.add_argument("--n-particles", help="Número de partículas N")
    common.add_argument("--rel-tol", help="Tolerancia relativa de la suma directa")
    common.add_argument("--k-max", help="Máximo número de términos de la suma directa")
    common.add_argument("--out", help="Fichero CSV (o directorio en figure)")
    common.add_argument("--svg", action="store_true", help="Generar también los gráficos SVG")
    common.add_argument(
        "--paper-literal",
        "--printed-coefficients",
        dest="printed_coefficients",
        action="store_true",
        help="Usar los coeficientes impresos de la cola relativista en Euler-MacLaurin",
    )
    common.add_argument("--units", choices=["natural", "si"], help="Sistema de unidades")
    common.add_argument("--m0c2", help="Energía en reposo en julios (solo con --units si)")
    common.add_argument("--workers", help="Hilos para evaluar la rejilla")
    common.add_argument("--xlsx", help="Libro Excel de la comparación")
    common.add_argument("--config", help="Fichero clave=valor con opciones")
    common.add_argument("--verbose", action="store_true", help="Logging en nivel DEBUG")
    return common


def build_parser() -> CliParser:
    common = _common_options()
    parser = CliParser(
        description="Termodinámica de partículas neutras con momento dipolar magnético",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=CliParser)
    subparsers.required = True

    subparsers.add_parser("sweep", parents=[common], help="Barrido en temperatura")
    figure = subparsers.add_parser("figure", parents=[common], help="Datos (y SVG) de una figura")
    figure.add_argument("figure_id", help="free-energy-rel, entropy-rel, free-energy-nonrel, entropy-nonrel, mean-energy")
    subparsers.add_parser("compare", parents=[common], help="Comparación de varias vías")
    validation = subparsers.add_parser("validate", parents=[common], help="Batería de validación")
    validation.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def collect_options(args: argparse.Namespace) -> dict:
    """
    Une fichero de configuración y línea de comandos.

    Las opciones de la línea de comandos tienen prioridad sobre el fichero.
    """
    cli = {key: value for key, value in vars(args).items() if key not in ("command", "figure_id", "perturb", "verbose")}
    config_path = cli.pop("config", None)
    options = read_config_file(Path(config_path)) if config_path else {}
    options.update(cli)
    return options


def run_figure_command(figure_id: str, options: dict) -> list[Path]:
    """Genera la figura; ``--out`` es el directorio de salida."""
    figure = get_figure(figure_id)
    out_dir = options.pop("out", None)
    svg = SweepConfig.from_mapping({"svg": options.pop("svg", False)}).emit_svg
    keys = {str(key).replace("-", "_") for key in options}
    for key in ("regime", "method", "xi"):
        if key in keys:
            raise UsageError(f"'{key}' no se puede cambiar en figure ({figure.id} fija su valor)")
    for key in ("xlsx", "printed_coefficients", "paper_literal"):
        if key in keys:
            raise UsageError(f"'{key}' no se aplica a figure (solo formas cerradas, sin comparación)")
    config = SweepConfig.from_mapping(options) if options else None
    return emit_figure(figure.id, Path(out_dir) if out_dir else None, svg=svg, config=config)


def run_command(args: argparse.Namespace) -> int:
    options = collect_options(args)

    if args.command == "validate":
        report = validate(perturbation=args.perturb)
        print(report.text())
        if report.failed:
            raise ValidationFailure(f"{len(report.failed)} chequeos fallidos: {[c.name for c in report.failed]}")
        return EXIT_OK

    if args.command == "figure":
        for path in run_figure_command(args.figure_id, options):
            print(path)
        return EXIT_OK

    config = SweepConfig.from_mapping(options)
    if args.command == "sweep":
        if len(config.methods) > 1:
            raise UsageError("sweep admite una sola vía; use compare para varias")
        print(run_sweep(config))
    else:
        print(compare_methods(config))
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    """
    Punto de entrada.

    Returns:
        Código de salida: 0 éxito, 1 uso, 2 fallo numérico, 3 validación
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)

    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "verbose", False):
            logging.getLogger().setLevel(logging.DEBUG)
        return run_command(args)
    except Exception as e:
        logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
