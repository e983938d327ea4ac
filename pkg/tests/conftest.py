import json

import hypothesis
import numpy as np
import pytest

from app.services.graph.generator_service import formation_clustering, formation_network
from app.services.optimization.conic_solver import CvxpyConicSolver
from app.services.pipeline.reduction_pipeline_service import ReductionPipelineService

hypothesis.settings.register_profile("ci", max_examples=25, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile("ci")

# Cociente de 5 clusters y 8 aristas con dos juegos de pesos balanceados
FIVE_CLUSTER_B_HAT = np.array([
    [1, 1, -1, -1, 0, 0, 0, -1],
    [-1, 0, 1, 0, 0, 0, 0, 0],
    [0, -1, 0, 1, 1, 1, -1, 0],
    [0, 0, 0, 0, -1, 0, 1, 0],
    [0, 0, 0, 0, 0, -1, 0, 1],
], dtype=float)

FIVE_CLUSTER_W0 = np.array([0.6803, 0.2268, 0.6803, 0.0756, 0.0756, 0.1512, 0.0756, 0.1512])
FIVE_CLUSTER_W_STAR = np.array([0.6826, 0.2394, 0.6826, 0.0948, 0.0537, 0.1446, 0.0537, 0.1446])


@pytest.fixture
def five_cluster():
    """(B̂, ŵ de proyección, ŵ optimizado) del cociente de 5 clusters."""
    return FIVE_CLUSTER_B_HAT, FIVE_CLUSTER_W0, FIVE_CLUSTER_W_STAR


@pytest.fixture
def formation():
    return formation_network()


@pytest.fixture
def formation_clusters():
    return formation_clustering()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def solver():
    return CvxpyConicSolver(solver="CLARABEL", fallback="SCS", tol=1e-8)


@pytest.fixture
def prepared(formation, formation_clusters, solver):
    return ReductionPipelineService(solver).prepare(formation, formation_clusters)


@pytest.fixture
def formation_files(tmp_path):
    """Grafo y clusters del preset paper6 escritos en disco (índices desde 1)."""
    graph = {
        "n": 6,
        "edges": [
            {"tail": 2, "head": 1, "weight": 2.0},
            {"tail": 1, "head": 2, "weight": 1.0},
            {"tail": 6, "head": 2, "weight": 2.0},
            {"tail": 2, "head": 3, "weight": 1.0},
            {"tail": 4, "head": 3, "weight": 2.0},
            {"tail": 5, "head": 3, "weight": 1.0},
            {"tail": 5, "head": 4, "weight": 2.0},
            {"tail": 3, "head": 5, "weight": 3.0},
            {"tail": 1, "head": 6, "weight": 1.0},
            {"tail": 3, "head": 6, "weight": 1.0},
        ],
        "inputs": [{"vertex": 4, "channel": 1, "gain": 1.0}],
        "outputs": [{"channel": 1, "vertex": 1, "gain": 1.0}],
    }
    graph_path = tmp_path / "graph.json"
    clusters_path = tmp_path / "clusters.json"
    graph_path.write_text(json.dumps(graph))
    clusters_path.write_text(json.dumps([[1, 2], [3, 4, 5], [6]]))
    return graph_path, clusters_path
