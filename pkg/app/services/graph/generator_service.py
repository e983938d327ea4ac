"""
Generación de redes: el ejemplo de 6 vértices (formación de vehículos) y
redes aleatorias fuertemente conexas reproducibles por semilla.
"""
import logging
from pathlib import Path

import numpy as np

from app.models.graph.network_model import Clustering, DirectedNetwork, Edge
from app.repositories.network.network_repository import NetworkRepository
from app.services.graph.graph_service import from_undirected
from app.utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Nombres del preset de 6 vértices en la CLI
FORMATION_PRESETS = ("paper6", "formation6")

# (cola, cabeza, peso) en índices desde 1, en el orden de columnas de B
_FORMATION_ARCS = (
    (2, 1, 2.0),
    (1, 2, 1.0),
    (6, 2, 2.0),
    (2, 3, 1.0),
    (4, 3, 2.0),
    (5, 3, 1.0),
    (5, 4, 2.0),
    (3, 5, 3.0),
    (1, 6, 1.0),
    (3, 6, 1.0),
)


def formation_network() -> DirectedNetwork:
    """Red de 6 vértices con entrada en el vértice 4 y salida en el vértice 1."""
    n = 6
    F = np.zeros((n, 1))
    F[3, 0] = 1.0
    H = np.zeros((1, n))
    H[0, 0] = 1.0
    edges = tuple(Edge(t - 1, h - 1, w) for t, h, w in _FORMATION_ARCS)
    return DirectedNetwork(n=n, edges=edges, input_map=F, output_map=H)


def formation_clustering() -> Clustering:
    """Clusters {1, 2}, {3, 4, 5}, {6}."""
    return Clustering.from_groups([[0, 1], [2, 3, 4], [5]])


def _random_weight(rng: np.random.Generator, weight_range: tuple[float, float]) -> float:
    # 6 decimales para que el archivo JSON reproduzca el mismo float
    return float(np.round(rng.uniform(*weight_range), 6))


def random_network(
    rng: np.random.Generator,
    n: int,
    *,
    balanced: bool = False,
    extra_edge_prob: float = 0.3,
    weight_range: tuple[float, float] = (0.5, 2.0),
    p: int = 1,
    q: int = 1,
) -> DirectedNetwork:
    """
    Red aleatoria fuertemente conexa.

    Se parte de un ciclo hamiltoniano aleatorio. Si `balanced`, se suman
    ciclos dirigidos aleatorios con peso constante (la suma de ciclos es
    balanceada); si no, se agregan cuerdas independientes con probabilidad
    `extra_edge_prob`.
    """
    weights: dict[tuple[int, int], float] = {}

    def add_cycle(cycle, w):
        for k in range(len(cycle)):
            key = (int(cycle[k]), int(cycle[(k + 1) % len(cycle)]))
            weights[key] = weights.get(key, 0.0) + w

    if n > 1:
        add_cycle(rng.permutation(n), _random_weight(rng, weight_range))

    if balanced and n > 2:
        n_cycles = int(rng.binomial(n, extra_edge_prob))
        for _ in range(n_cycles):
            length = int(rng.integers(2, n + 1))
            add_cycle(rng.choice(n, size=length, replace=False), _random_weight(rng, weight_range))
    elif n > 2:
        for tail in range(n):
            for head in range(n):
                if tail == head or (tail, head) in weights:
                    continue
                if rng.random() < extra_edge_prob:
                    weights[(tail, head)] = _random_weight(rng, weight_range)

    edges = tuple(Edge(t, h, round(w, 6)) for (t, h), w in sorted(weights.items()))

    p = min(p, n)
    q = min(q, n)
    F = np.zeros((n, p))
    F[rng.choice(n, size=p, replace=False), np.arange(p)] = 1.0
    H = np.zeros((q, n))
    H[np.arange(q), rng.choice(n, size=q, replace=False)] = 1.0

    logger.info(f"Red aleatoria generada: n={n}, m={len(edges)}, balanceada={balanced}")
    return DirectedNetwork(n=n, edges=edges, input_map=F, output_map=H)


def random_clustering(rng: np.random.Generator, n: int, r: int) -> Clustering:
    """Partición aleatoria en r clusters no vacíos."""
    if not 1 <= r <= n:
        raise ConfigurationError(f"r debe estar entre 1 y {n}, se recibió {r}.")
    order = rng.permutation(n)
    labels = np.empty(n, dtype=int)
    labels[order[:r]] = np.arange(r)
    labels[order[r:]] = rng.integers(0, r, size=n - r)
    return Clustering(labels=labels, r=r)


def random_undirected_network(
    rng: np.random.Generator,
    n: int,
    *,
    extra_edge_prob: float = 0.3,
    weight_range: tuple[float, float] = (0.5, 2.0),
    p: int = 1,
    q: int = 1,
) -> DirectedNetwork:
    """Árbol generador aleatorio más aristas extra, convertido a arcos simétricos."""
    order = rng.permutation(n)
    pairs = {}
    for k in range(1, n):
        parent = int(order[rng.integers(0, k)])
        child = int(order[k])
        pairs[(min(parent, child), max(parent, child))] = _random_weight(rng, weight_range)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in pairs and rng.random() < extra_edge_prob:
                pairs[(u, v)] = _random_weight(rng, weight_range)

    p = min(p, n)
    q = min(q, n)
    F = np.zeros((n, p))
    F[rng.choice(n, size=p, replace=False), np.arange(p)] = 1.0
    H = np.zeros((q, n))
    H[np.arange(q), rng.choice(n, size=q, replace=False)] = 1.0
    return from_undirected(n, [(u, v, w) for (u, v), w in sorted(pairs.items())], F, H)


class NetworkGenerationService:
    """
    Servicio de generación de redes de prueba.
    """

    def __init__(self):
        self.network_repo = NetworkRepository()

    def generate_files(
        self,
        preset: str,
        out_path: Path,
        n: int = 8,
        r: int | None = None,
        balanced: bool = False,
        undirected: bool = False,
        seed: int | None = None,
        clusters_path: Path | None = None,
    ) -> tuple[DirectedNetwork, Clustering | None]:
        """
        Genera una red (preset `paper6`/`formation6` o `random`) y opcionalmente una
        partición, y las escribe en disco.
        """
        rng = np.random.default_rng(seed)
        clustering = None
        if preset in FORMATION_PRESETS:
            net = formation_network()
            clustering = formation_clustering()
        elif preset == "random":
            if undirected:
                net = random_undirected_network(rng, n)
            else:
                net = random_network(rng, n, balanced=balanced)
            if r is not None:
                clustering = random_clustering(rng, n, r)
        else:
            raise ConfigurationError(f"Preset desconocido '{preset}'.")

        self.network_repo.save_graph(net, out_path)
        if clusters_path is not None:
            if clustering is None:
                raise ConfigurationError("Para escribir clusters de una red aleatoria se requiere --r.")
            self.network_repo.save_clustering(clustering, clusters_path)
        return net, clustering
