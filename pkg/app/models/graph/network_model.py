"""
Modelos del grafo dirigido de acoplamiento difusivo.

Los vértices y los clusters se indexan desde 0 en memoria; los archivos
usan índices desde 1 (la conversión vive en los repositorios).
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from app.utils.exceptions import InvalidGraphError
from app.utils.matrices import frozen


class Edge(NamedTuple):
    """Arista dirigida tail → head con peso positivo."""
    tail: int
    head: int
    weight: float


@dataclass(frozen=True, eq=False)
class DirectedNetwork:
    """
    Grafo dirigido ponderado con mapa de entrada F (n×p) y de salida H (q×n).

    Invariantes: sin lazos, sin aristas paralelas y pesos estrictamente
    positivos y finitos.
    """
    n: int
    edges: tuple[Edge, ...]
    input_map: np.ndarray
    output_map: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise InvalidGraphError("El grafo debe tener al menos un vértice.")

        edges = tuple(Edge(int(e[0]), int(e[1]), float(e[2])) for e in self.edges)
        seen = set()
        for e in edges:
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise InvalidGraphError(
                    f"Arista ({e.tail + 1} → {e.head + 1}) fuera del rango de vértices 1..{self.n}."
                )
            if e.tail == e.head:
                raise InvalidGraphError(f"Lazo no permitido en el vértice {e.tail + 1}.")
            if not np.isfinite(e.weight) or e.weight <= 0:
                raise InvalidGraphError(
                    f"Peso no positivo en la arista ({e.tail + 1} → {e.head + 1}): {e.weight}."
                )
            if (e.tail, e.head) in seen:
                raise InvalidGraphError(f"Arista duplicada ({e.tail + 1} → {e.head + 1}).")
            seen.add((e.tail, e.head))

        F = np.atleast_2d(np.asarray(self.input_map, dtype=float))
        H = np.atleast_2d(np.asarray(self.output_map, dtype=float))
        if F.shape[0] != self.n:
            raise InvalidGraphError(f"F debe tener {self.n} filas, tiene {F.shape[0]}.")
        if H.shape[1] != self.n:
            raise InvalidGraphError(f"H debe tener {self.n} columnas, tiene {H.shape[1]}.")

        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "input_map", frozen(F))
        object.__setattr__(self, "output_map", frozen(H))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def p(self) -> int:
        return self.input_map.shape[1]

    @property
    def q(self) -> int:
        return self.output_map.shape[0]

    @property
    def tails(self) -> np.ndarray:
        return np.array([e.tail for e in self.edges], dtype=int)

    @property
    def heads(self) -> np.ndarray:
        return np.array([e.head for e in self.edges], dtype=int)

    @property
    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.edges], dtype=float)


@dataclass(frozen=True, eq=False)
class IncidenceDecomposition:
    """L = B0 · diag(w) · Bᵀ para el orden de aristas `edges`."""
    B: np.ndarray
    B0: np.ndarray
    weights: np.ndarray
    edges: tuple[Edge, ...] = field(default=())

    @property
    def W(self) -> np.ndarray:
        return np.diag(self.weights)


@dataclass(frozen=True, eq=False)
class Clustering:
    """Partición de los n vértices en r clusters no vacíos."""
    labels: np.ndarray
    r: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=int)
        if labels.ndim != 1 or labels.size == 0:
            raise InvalidGraphError("La partición debe asignar un cluster a cada vértice.")
        if self.r < 1 or labels.min() < 0 or labels.max() >= self.r:
            raise InvalidGraphError("Etiquetas de cluster fuera de rango.")
        empty = np.setdiff1d(np.arange(self.r), labels)
        if empty.size:
            raise InvalidGraphError(f"Clusters vacíos: {[int(c) + 1 for c in empty]}.")
        object.__setattr__(self, "labels", frozen(labels, dtype=int))

    @classmethod
    def from_groups(cls, groups, n: int | None = None) -> "Clustering":
        """Construye la partición desde listas de vértices (índices desde 0)."""
        members = [int(v) for g in groups for v in g]
        n = n if n is not None else len(members)
        if sorted(members) != list(range(n)):
            raise InvalidGraphError(
                "Cada vértice debe pertenecer exactamente a un cluster."
            )
        labels = np.empty(n, dtype=int)
        for k, group in enumerate(groups):
            labels[list(group)] = k
        return cls(labels=labels, r=len(groups))

    @classmethod
    def identity(cls, n: int) -> "Clustering":
        return cls(labels=np.arange(n), r=n)

    @property
    def n(self) -> int:
        return self.labels.size

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.r)

    def groups(self) -> list[list[int]]:
        return [np.flatnonzero(self.labels == k).tolist() for k in range(self.r)]
