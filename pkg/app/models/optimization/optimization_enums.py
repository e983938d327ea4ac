"""
Enums para el módulo de optimización.
Define los estados del solver, de la corrida y las formas de la LMI.
"""
from enum import Enum


class SolverStatus(str, Enum):
    """Estado reportado por el solver cónico"""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    NUMERICAL_FAILURE = "numerical_failure"


class RunStatus(str, Enum):
    """Estado final del optimizador de pesos"""
    CONVERGED = "converged"  # |f_k − f_{k−1}| ≤ ε
    MAX_ITER = "max_iter"  # Se agotaron las iteraciones
    STALLED = "stalled"  # Iterado rechazado por no mejorar
    SOLVER_FAILED = "solver_failed"  # El subproblema no se resolvió


class ConeKind(str, Enum):
    """Conos de las restricciones de un programa cónico"""
    PSD = "psd"
    NONNEG = "nonneg"
    EQUALITY = "equality"


class LmiForm(str, Enum):
    """Forma de la cota H2"""
    SCALED = "scaled"  # Forma con E, Ā_r y δ̂
    STANDARD = "standard"  # Forma clásica con A_e


class InitStrategy(str, Enum):
    """Inicialización de los pesos reducidos"""
    PROJECTION = "projection"  # ŵ⁽⁰⁾ de Πᵀ L_b Π
    CYCLES = "cycles"  # Circulación positiva por ciclos
