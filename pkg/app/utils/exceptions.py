"""
Excepciones del dominio.

Cada error lleva un mensaje (`detail`) y el código de salida con el que
termina la línea de comandos, igual que un HTTPException lleva su status.

Códigos de salida:
    0  éxito
    1  error inesperado
    2  ParseError
    3  ConnectivityError
    4  SolverError
    5  AdmissibilityError
    6  InvalidGraphError
    7  NumericalError
    8  ConfigurationError
"""


class NetworkReductionError(Exception):
    """Error base de la aplicación."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return self.detail


class ParseError(NetworkReductionError):
    """Archivo de entrada mal formado."""
    exit_code = 2


class ConnectivityError(NetworkReductionError):
    """Grafo (o cociente) no fuertemente conexo."""
    exit_code = 3


class SolverError(NetworkReductionError):
    """Falla del solver cónico."""
    exit_code = 4


class AdmissibilityError(NetworkReductionError):
    """Pesos reducidos que no pertenecen al conjunto admisible."""
    exit_code = 5


class InvalidGraphError(NetworkReductionError):
    """Grafo con lazos, aristas duplicadas o pesos no positivos."""
    exit_code = 6


class NumericalError(NetworkReductionError):
    """Resultado numérico no confiable (Lyapunov mal condicionado, sistema no Hurwitz, ...)."""
    exit_code = 7


class ConfigurationError(NetworkReductionError):
    """Parámetros de ejecución inconsistentes."""
    exit_code = 8
