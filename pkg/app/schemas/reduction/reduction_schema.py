"""
Schemas Pydantic para los archivos de salida y reportes.
"""
from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.optimization.optimization_enums import RunStatus


class WeightedArc(BaseModel):
    """Arista ponderada (índices desde 1)"""
    tail: int
    head: int
    weight: float


class RunSummary(BaseModel):
    """Resumen de una corrida de reducción"""
    initial_h2_error: float
    final_h2_error: float
    improvement_pct: float
    iterations: int
    status: RunStatus


class ReducedModelFile(BaseModel):
    """Modelo reducido completo"""
    clusters: List[List[int]]
    masses_hat: List[float]
    edges: List[WeightedArc]  # Aristas del cociente con ŵ*
    initial_weights: List[float]
    L_hat: List[List[float]]
    F_hat: List[List[float]]
    H_hat: List[List[float]]
    reduced_graph: List[WeightedArc]  # Digrafo representado por L̂
    summary: RunSummary


class MassesFile(BaseModel):
    """Masas de balanceo"""
    balanced: bool
    masses: List[float]


class EvaluationReport(BaseModel):
    """Evaluación de un juego de pesos reducidos"""
    h2_error: float
    hurwitz: bool
    consensus: bool
    admissible: bool


class BenchmarkRow(BaseModel):
    """Fila del barrido de instancias aleatorias"""
    instance: int
    n: int = Field(..., ge=1)
    r: int = Field(..., ge=1)
    initial_h2: float
    final_h2: float
    improvement_pct: float
    iterations: int
    status: str
    error: Optional[str] = None
