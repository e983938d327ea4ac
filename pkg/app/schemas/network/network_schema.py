"""
Schemas Pydantic para los archivos de entrada.
Grafo, partición en clusters y pesos reducidos (índices desde 1).
"""
import math
from typing import List, Tuple

from pydantic import BaseModel, Field, RootModel, field_validator, model_validator


class EdgeEntry(BaseModel):
    """Arista dirigida tail → head"""
    tail: int = Field(..., ge=1)
    head: int = Field(..., ge=1)
    weight: float


class InputEntry(BaseModel):
    """Entrada: F(vertex, channel) = gain"""
    vertex: int = Field(..., ge=1)
    channel: int = Field(..., ge=1)
    gain: float = 1.0


class OutputEntry(BaseModel):
    """Salida: H(channel, vertex) = gain"""
    channel: int = Field(..., ge=1)
    vertex: int = Field(..., ge=1)
    gain: float = 1.0


class GraphFile(BaseModel):
    """Archivo de grafo"""
    n: int = Field(..., ge=1)
    undirected: bool = False
    edges: List[EdgeEntry] = Field(default_factory=list)
    inputs: List[InputEntry] = Field(..., min_length=1)
    outputs: List[OutputEntry] = Field(..., min_length=1)

    @model_validator(mode='after')
    def validate_vertices(self):
        """Validar que todos los vértices estén en 1..n"""
        vertices = (
            [v for e in self.edges for v in (e.tail, e.head)]
            + [i.vertex for i in self.inputs]
            + [o.vertex for o in self.outputs]
        )
        out_of_range = sorted({v for v in vertices if v > self.n})
        if out_of_range:
            raise ValueError(f'vértices fuera de rango 1..{self.n}: {out_of_range}')
        return self


class ClusteringFile(RootModel[List[List[int]]]):
    """Archivo de clusters: lista de listas de vértices"""

    @field_validator('root')
    @classmethod
    def validate_groups(cls, v):
        if not v:
            raise ValueError('la partición no puede estar vacía')
        if any(vertex < 1 for group in v for vertex in group):
            raise ValueError('los vértices se numeran desde 1')
        return v


class WeightsFile(RootModel[List[Tuple[int, int, float]]]):
    """Archivo de pesos reducidos: (cluster cola, cluster cabeza, peso)"""

    @field_validator('root')
    @classmethod
    def validate_clusters(cls, v):
        if any(t < 1 or h < 1 for t, h, _ in v):
            raise ValueError('los clusters se numeran desde 1')
        if not all(math.isfinite(w) for _, _, w in v):
            raise ValueError('los pesos deben ser finitos')
        return v
