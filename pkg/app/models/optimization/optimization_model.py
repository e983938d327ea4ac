"""
Modelos del optimizador: programa cónico, resultado del solver,
datos fijos de la reducción y traza de iteraciones.
"""
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from app.models.analysis.analysis_model import DeflationPair
from app.models.graph.network_model import Edge
from app.models.optimization.optimization_enums import ConeKind, RunStatus, SolverStatus
from app.models.reduction.reduction_model import (
    BalancedRepresentation,
    QuotientModel,
    WeightParameterization,
)
from app.utils.exceptions import NumericalError


@dataclass(frozen=True)
class TaggedConstraint:
    """Expresión cvxpy restringida al cono `cone` (expr ≽ 0, expr ≥ 0 o expr == 0)."""
    cone: ConeKind
    name: str
    expr: Any


@dataclass
class ConicProgram:
    """
    Programa cónico: variables con nombre, objetivo a minimizar y
    restricciones etiquetadas por cono.
    """
    variables: dict[str, Any]
    objective: Any
    constraints: list[TaggedConstraint] = field(default_factory=list)

    def add(self, cone: ConeKind, name: str, expr) -> None:
        self.constraints.append(TaggedConstraint(cone, name, expr))

    def add_nonneg(self, name: str, expr) -> None:
        self.add(ConeKind.NONNEG, name, expr)

    def add_equality(self, name: str, expr) -> None:
        self.add(ConeKind.EQUALITY, name, expr)

    def add_psd(self, name: str, expr, size: int) -> None:
        if tuple(expr.shape) != (size, size):
            raise NumericalError(
                f"Bloque PSD '{name}' con forma {tuple(expr.shape)}, se esperaba ({size}, {size})."
            )
        self.add(ConeKind.PSD, name, expr)


@dataclass(frozen=True)
class SolverOutcome:
    """Resultado de un programa cónico."""
    status: SolverStatus
    values: dict[str, np.ndarray]
    objective: float | None
    solver: str = ""
    diagnostics: str = ""

    @property
    def ok(self) -> bool:
        return self.status is SolverStatus.OPTIMAL


@dataclass(frozen=True, eq=False)
class ReductionData:
    """
    Todo lo que permanece fijo durante la optimización de pesos.

    `A_bar` = blockdiag(A_orig, 0), `E` y `Ā_r(μ) = Σ μ_i ar_basis[i]`
    (embebida en N×N) dan A_e(μ) = A_bar + E·Ā_r(μ). `ar_basis` guarda las
    matrices G_i de (r−1)×(r−1) tales que A_r(μ) = Σ μ_i G_i.
    """
    rep: BalancedRepresentation
    output_map: np.ndarray
    quotient: QuotientModel
    parameterization: WeightParameterization
    deflation: DeflationPair
    A_orig: np.ndarray
    A_bar: np.ndarray
    E: np.ndarray
    B_e: np.ndarray
    C_e: np.ndarray
    ar_basis: np.ndarray

    @property
    def n_block(self) -> int:
        return self.A_orig.shape[0]

    @property
    def r_block(self) -> int:
        return self.ar_basis.shape[1]

    @property
    def N(self) -> int:
        return self.n_block + self.r_block

    @property
    def p(self) -> int:
        return self.B_e.shape[1]

    @property
    def q(self) -> int:
        return self.C_e.shape[0]

    @property
    def m_bar(self) -> int:
        return self.parameterization.m_bar

    @property
    def lmi_size(self) -> int:
        return 2 * self.N + self.p


@dataclass(frozen=True)
class IterationRecord:
    """Una fila de la traza del optimizador."""
    iteration: int
    objective: float
    h2_error: float
    status: SolverStatus
    elapsed_ms: float
    mu: np.ndarray


@dataclass
class IterationTrace:
    """Traza completa de una corrida del optimizador."""
    records: list[IterationRecord] = field(default_factory=list)
    status: RunStatus = RunStatus.MAX_ITER
    best: int = 0  # fila con menor error H2

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    @property
    def objectives(self) -> np.ndarray:
        return np.array([r.objective for r in self.records])

    @property
    def h2_errors(self) -> np.ndarray:
        return np.array([r.h2_error for r in self.records])

    @property
    def iterations(self) -> int:
        return max(len(self.records) - 1, 0)

    @property
    def initial_error(self) -> float:
        return self.records[0].h2_error

    @property
    def final_error(self) -> float:
        return self.records[self.best].h2_error

    @property
    def best_mu(self) -> np.ndarray:
        return self.records[self.best].mu

    @property
    def improvement(self) -> float:
        """(inicial − final)/inicial; 0 si el error inicial es nulo."""
        if self.initial_error <= 0:
            return 0.0
        return (self.initial_error - self.final_error) / self.initial_error


@dataclass(frozen=True, eq=False)
class ReductionResult:
    """Salida completa de una reducción optimizada."""
    quotient: QuotientModel
    initial_weights: np.ndarray
    weights: np.ndarray
    L_hat: np.ndarray
    F_hat: np.ndarray
    H_hat: np.ndarray
    reduced_edges: tuple[Edge, ...]
    trace: IterationTrace
