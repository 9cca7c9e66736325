"""
Lectura de ficheros de configuración ``clave=valor``.
"""

import logging
from pathlib import Path

from src.utils.errors import UsageError

logger = logging.getLogger(__name__)

# Claves que pueden repetirse; sus valores se acumulan en una lista
REPEATABLE_KEYS = {"xi", "method"}


def read_config_file(path: Path) -> dict:
    """
    Lee un fichero con un par ``clave=valor`` por línea.

    Se ignoran las líneas vacías y los comentarios (``#``). Las claves se
    normalizan cambiando ``-`` por ``_``.

    Args:
        path: Ruta del fichero

    Returns:
        Diccionario clave -> valor (cadena, o lista para claves repetibles)

    Raises:
        UsageError: Si el fichero no existe o una línea no tiene '='
    """
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"No se encontró el fichero de configuración: {path}")

    values: dict = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: se esperaba 'clave=valor', se leyó {raw.strip()!r}")

            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if not key:
                raise UsageError(f"{path}:{lineno}: clave vacía")

            if key in REPEATABLE_KEYS:
                values.setdefault(key, []).append(value)
            else:
                values[key] = value

    logger.debug(f"Configuración leída de {path}: {sorted(values)}")
    return values
