"""
Jerarquía de excepciones y códigos de salida.
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3


class DiracThermoError(Exception):
    """Error base del proyecto."""

    exit_code = EXIT_NUMERICAL


class DomainError(DiracThermoError, ValueError):
    """Entrada física fuera del dominio (k = 0, T <= 0, b <= 0, ...)."""

    exit_code = EXIT_USAGE


class UsageError(DiracThermoError, ValueError):
    """Configuración de barrido o de CLI inválida."""

    exit_code = EXIT_USAGE


class TruncationError(DiracThermoError):
    """La suma directa alcanzó k_max sin cumplir la tolerancia."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class AccuracyError(DiracThermoError):
    """La cuadratura no alcanzó la tolerancia pedida."""

    def __init__(self, message: str, value: float, error: float):
        super().__init__(message)
        self.value = value
        self.error = error


class ExpansionError(DiracThermoError):
    """El desarrollo de Euler-MacLaurin truncado no es positivo."""


class ValidationFailure(DiracThermoError):
    """Al menos un chequeo de validación ha fallado."""

    exit_code = EXIT_VALIDATION


def exit_code_for(exc: BaseException) -> int:
    """Devuelve el código de salida asociado a una excepción."""
    if isinstance(exc, DiracThermoError):
        return exc.exit_code
    if isinstance(exc, OSError):
        return EXIT_USAGE
    return EXIT_NUMERICAL
