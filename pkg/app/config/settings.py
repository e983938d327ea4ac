from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Configuración de la aplicación.
    Lee las variables de entorno automáticamente.
    """

    # Application
    APP_NAME: str = "netreduce"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Optimización de pesos
    DELTA_HAT: float = 1e-5
    STOP_TOL: float = 1e-5
    MAX_ITER: int = 200
    W_MIN_FACTOR: float = 1e-6
    EPS_PSD: float = 1e-7
    KEEP_DESCENDING: bool = False
    ACCEPT_TOL_FACTOR: float = 10.0  # holgura de aceptación = factor · tolerancia del solver

    # Solver cónico
    SOLVER: str = "CLARABEL"
    SOLVER_FALLBACK: str = "SCS"
    SOLVER_TOL: float = 1e-8
    SOLVER_CHECK_TOL: float = 1e-6

    # Tolerancias numéricas
    BALANCE_TOL_FACTOR: float = 1e-9
    HURWITZ_TOL: float = 1e-9
    CONSENSUS_TOL: float = 1e-9
    RANGE_TOL: float = 1e-8
    LYAPUNOV_TOL: float = 1e-10

    # Salida
    FLOAT_DIGITS: int = 12

    class Config:
        env_file = ".env"
        case_sensitive = True


# Instancia global de configuración
settings = Settings()
