"""
Servicio de grafos.
Laplaciano, incidencia, balance y conectividad de redes dirigidas.

Convención: la arista (u → v, w) aporta +w en L(v, v) y −w en L(v, u), de
modo que el estado de v es atraído hacia el de u. La columna de incidencia
tiene +1 en la cabeza v y −1 en la cola u.
"""
import logging

import networkx as nx
import numpy as np

from app.config.settings import settings
from app.models.graph.network_model import Clustering, DirectedNetwork, Edge, IncidenceDecomposition
from app.utils.exceptions import ConnectivityError, InvalidGraphError

logger = logging.getLogger(__name__)


def laplacian(net: DirectedNetwork) -> np.ndarray:
    """L = diag(A·1) − A con A(v, u) = peso de la arista u → v."""
    adjacency = np.zeros((net.n, net.n))
    if net.m:
        adjacency[net.heads, net.tails] = net.weights
    return np.diag(adjacency.sum(axis=1)) - adjacency


def incidence(net: DirectedNetwork) -> IncidenceDecomposition:
    """B (n×m), B0 = parte positiva de B y w, con L = B0 diag(w) Bᵀ."""
    B = np.zeros((net.n, net.m))
    columns = np.arange(net.m)
    B[net.heads, columns] = 1.0
    B[net.tails, columns] = -1.0
    B0 = (B > 0).astype(float)
    return IncidenceDecomposition(B=B, B0=B0, weights=net.weights, edges=net.edges)


def degree_imbalance(net: DirectedNetwork) -> np.ndarray:
    """B·w = grado de entrada − grado de salida, por vértice."""
    decomposition = incidence(net)
    return decomposition.B @ decomposition.weights


def as_digraph(n: int, arcs) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((int(tail), int(head)) for tail, head, *_ in arcs)
    return graph


def is_strongly_connected(net: DirectedNetwork) -> bool:
    return nx.is_strongly_connected(as_digraph(net.n, net.edges))


def is_balanced(net: DirectedNetwork, tol: float | None = None) -> bool:
    """
    Verifica si el grado de entrada coincide con el de salida en cada vértice.

    Raises:
        ConnectivityError: si el grafo no es fuertemente conexo
    """
    if not is_strongly_connected(net):
        raise ConnectivityError("El grafo no es fuertemente conexo.")

    if tol is None:
        in_degree = np.zeros(net.n)
        out_degree = np.zeros(net.n)
        np.add.at(in_degree, net.heads, net.weights)
        np.add.at(out_degree, net.tails, net.weights)
        max_degree = max(in_degree.max(initial=0.0), out_degree.max(initial=0.0))
        tol = settings.BALANCE_TOL_FACTOR * max_degree

    return bool(np.max(np.abs(degree_imbalance(net)), initial=0.0) <= tol)


def characteristic_matrix(clustering: Clustering) -> np.ndarray:
    """Π (n×r) con Π(i, k) = 1 si el vértice i pertenece al cluster k."""
    Pi = np.zeros((clustering.n, clustering.r))
    Pi[np.arange(clustering.n), clustering.labels] = 1.0
    return Pi


def from_undirected(n: int, edges, input_map, output_map) -> DirectedNetwork:
    """
    Cada arista no dirigida {u, v, w} se convierte en los arcos u → v y
    v → u con el mismo peso; el resultado es balanceado.
    """
    arcs = []
    seen = set()
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidGraphError(f"Arista no dirigida duplicada {{{u + 1}, {v + 1}}}.")
        seen.add(key)
        arcs.append(Edge(int(u), int(v), float(w)))
        arcs.append(Edge(int(v), int(u), float(w)))
    return DirectedNetwork(n=n, edges=tuple(arcs), input_map=input_map, output_map=output_map)
