"""
Servicio de reducción.
Construye el grafo cociente de una partición, el modelo reducido
parametrizado y los pesos iniciales.
"""
import logging

import networkx as nx
import numpy as np

from app.models.graph.network_model import Clustering, Edge, IncidenceDecomposition
from app.models.reduction.reduction_model import (
    BalancedRepresentation,
    QuotientModel,
    ReducedSystem,
)
from app.services.graph.graph_service import as_digraph, characteristic_matrix
from app.utils.exceptions import AdmissibilityError, ConnectivityError, InvalidGraphError

logger = logging.getLogger(__name__)


def quotient(
    incidence_b: IncidenceDecomposition,
    clustering: Clustering,
    rep: BalancedRepresentation,
    output_map: np.ndarray,
) -> QuotientModel:
    """
    Grafo cociente de la red balanceada.

    Las columnas de ΠᵀB se recorren en orden; se descartan las nulas
    (aristas internas a un cluster) y las repetidas, de modo que queda una
    arista por par ordenado de clusters (cola, cabeza), en orden de primera
    aparición.

    Raises:
        InvalidGraphError: si la partición no cubre los n vértices
        ConnectivityError: si el cociente no es fuertemente conexo
    """
    if clustering.n != incidence_b.B.shape[0]:
        raise InvalidGraphError(
            f"La partición cubre {clustering.n} vértices y la red tiene {incidence_b.B.shape[0]}."
        )

    Pi = characteristic_matrix(clustering)
    projected = Pi.T @ incidence_b.B

    edge_map: list[tuple[int, int]] = []
    for k in range(projected.shape[1]):
        column = projected[:, k]
        if not np.any(column):
            continue
        pair = (int(np.argmin(column)), int(np.argmax(column)))
        if pair not in edge_map:
            edge_map.append(pair)

    r = clustering.r
    B_hat = np.zeros((r, len(edge_map)))
    for k, (tail, head) in enumerate(edge_map):
        B_hat[head, k] = 1.0
        B_hat[tail, k] = -1.0

    if not nx.is_strongly_connected(as_digraph(r, edge_map)):
        raise ConnectivityError("El grafo cociente no es fuertemente conexo.")

    logger.info(f"Cociente construido: r={r}, m̂={len(edge_map)}")
    return QuotientModel(
        B_hat=B_hat,
        B0_hat=(B_hat > 0).astype(float),
        edge_map=tuple(edge_map),
        masses_hat=Pi.T @ rep.masses,
        F_b_hat=Pi.T @ rep.F_b,
        H_hat=np.asarray(output_map) @ Pi,
        clustering=clustering,
        Pi=Pi,
    )


def reduced_system(q: QuotientModel, w_hat) -> ReducedSystem:
    """
    Modelo reducido L̂ = M̂⁻¹ B̂0 Ŵ B̂ᵀ, F̂ = M̂⁻¹ F̂_b, Ĥ = HΠ.

    Raises:
        AdmissibilityError: si algún peso no es estrictamente positivo
    """
    w = np.asarray(w_hat, dtype=float).reshape(-1)
    if w.size != q.m_hat:
        raise AdmissibilityError(f"Se esperaban {q.m_hat} pesos reducidos, se recibieron {w.size}.")
    if np.any(w <= 0):
        raise AdmissibilityError(f"Pesos reducidos no positivos en las aristas {np.flatnonzero(w <= 0) + 1}.")

    L_b_hat = (q.B0_hat * w) @ q.B_hat.T
    return ReducedSystem(
        L_hat=L_b_hat / q.masses_hat[:, None],
        F_hat=q.F_b_hat / q.masses_hat[:, None],
        H_hat=q.H_hat,
        L_b_hat=L_b_hat,
        weights=w,
    )


def is_admissible(q: QuotientModel, w_hat, tol: float = 1e-8) -> bool:
    """ŵ > 0 y B̂ŵ = 0 (balance del cociente)."""
    w = np.asarray(w_hat, dtype=float)
    if w.size != q.m_hat or np.any(w <= 0):
        return False
    scale = max(w.max(initial=0.0), 1.0)
    return bool(np.max(np.abs(q.B_hat @ w), initial=0.0) <= tol * scale)


def projection_initial_weights(L_b: np.ndarray, clustering: Clustering, q: QuotientModel) -> np.ndarray:
    """
    Pesos iniciales de proyección: la arista (cluster j → cluster i) recibe
    −(ΠᵀL_bΠ)(i, j).
    """
    Pi = characteristic_matrix(clustering)
    projected = Pi.T @ L_b @ Pi
    w0 = np.array([-projected[head, tail] for tail, head in q.edge_map])
    if np.any(w0 <= 0):
        raise AdmissibilityError("La proyección produjo pesos iniciales no positivos.")
    return w0


def cycle_cover_weights(q: QuotientModel) -> np.ndarray:
    """
    Circulación estrictamente positiva sobre el cociente: cada arista se
    cierra en un ciclo con el camino más corto de regreso y se suma una
    unidad por ciclo.
    """
    graph = as_digraph(q.r, q.edge_map)
    index = {pair: k for k, pair in enumerate(q.edge_map)}
    w = np.zeros(q.m_hat)
    for k, (tail, head) in enumerate(q.edge_map):
        w[k] += 1.0
        path = nx.shortest_path(graph, source=head, target=tail)
        for a, b in zip(path[:-1], path[1:]):
            w[index[(a, b)]] += 1.0
    return w


def reduced_graph_edges(rs: ReducedSystem) -> tuple[Edge, ...]:
    """Aristas del digrafo reducido que representa L̂ (en general no balanceado)."""
    edges = []
    r = rs.r
    for head in range(r):
        for tail in range(r):
            if head != tail and rs.L_hat[head, tail] < 0:
                edges.append(Edge(tail, head, float(-rs.L_hat[head, tail])))
    return tuple(sorted(edges))
