import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from app.models.graph.network_model import Clustering, DirectedNetwork, Edge
from app.services.graph.generator_service import random_clustering, random_network, random_undirected_network
from app.services.graph.graph_service import (
    characteristic_matrix,
    degree_imbalance,
    from_undirected,
    incidence,
    is_balanced,
    is_strongly_connected,
    laplacian,
)
from app.utils.exceptions import ConfigurationError, ConnectivityError, InvalidGraphError

FORMATION_LAPLACIAN = np.array([
    [2, -2, 0, 0, 0, 0],
    [-1, 3, 0, 0, 0, -2],
    [0, -1, 4, -2, -1, 0],
    [0, 0, 0, 2, -2, 0],
    [0, 0, -3, 0, 3, 0],
    [-1, 0, -1, 0, 0, 2],
], dtype=float)


def _network(n, arcs, p=1, q=1):
    return DirectedNetwork(
        n=n,
        edges=tuple(Edge(*a) for a in arcs),
        input_map=np.eye(n)[:, :p],
        output_map=np.eye(n)[:q],
    )


def test_laplacian_formation(formation):
    np.testing.assert_array_equal(laplacian(formation), FORMATION_LAPLACIAN)


def test_incidence_factorizes_laplacian(formation):
    decomposition = incidence(formation)
    L = decomposition.B0 @ decomposition.W @ decomposition.B.T
    np.testing.assert_allclose(L, FORMATION_LAPLACIAN)
    # +1 en la cabeza, −1 en la cola
    assert decomposition.B[0, 0] == 1.0 and decomposition.B[1, 0] == -1.0
    np.testing.assert_array_equal(decomposition.B.sum(axis=0), np.zeros(formation.m))


def test_formation_is_balanced(formation):
    assert is_strongly_connected(formation)
    assert is_balanced(formation)
    np.testing.assert_allclose(degree_imbalance(formation), np.zeros(6))


def test_unbalanced_cycle_with_chord():
    net = _network(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (0, 2, 0.5)])
    assert not is_balanced(net)


def test_is_balanced_requires_strong_connectivity():
    net = _network(3, [(0, 1, 1.0), (1, 2, 1.0)])
    assert not is_strongly_connected(net)
    with pytest.raises(ConnectivityError):
        is_balanced(net)


def test_single_vertex_is_trivially_balanced():
    net = _network(1, [])
    assert is_balanced(net)
    np.testing.assert_array_equal(laplacian(net), np.zeros((1, 1)))


@pytest.mark.parametrize(
    "arcs",
    [
        [(0, 0, 1.0)],
        [(0, 1, 0.0)],
        [(0, 1, -1.0)],
        [(0, 1, float("nan"))],
        [(0, 3, 1.0)],
        [(0, 1, 1.0), (0, 1, 2.0)],
    ],
    ids=["lazo", "peso-cero", "peso-negativo", "peso-nan", "fuera-de-rango", "duplicada"],
)
def test_invalid_networks_are_rejected(arcs):
    with pytest.raises(InvalidGraphError):
        _network(3, arcs)


def test_input_map_must_match_vertex_count():
    with pytest.raises(InvalidGraphError):
        DirectedNetwork(n=3, edges=(), input_map=np.ones((2, 1)), output_map=np.ones((1, 3)))


def test_network_arrays_are_read_only(formation):
    with pytest.raises(ValueError):
        formation.input_map[0, 0] = 5.0


def test_characteristic_matrix(formation_clusters):
    Pi = characteristic_matrix(formation_clusters)
    assert Pi.shape == (6, 3)
    np.testing.assert_array_equal(Pi.sum(axis=1), np.ones(6))
    np.testing.assert_array_equal(Pi.sum(axis=0), [2, 3, 1])
    assert formation_clusters.groups() == [[0, 1], [2, 3, 4], [5]]


@pytest.mark.parametrize(
    "groups",
    [[[0, 1], [1, 2]], [[0, 1]], [[0], [], [1, 2]]],
    ids=["repetido", "faltante", "vacío"],
)
def test_invalid_clusterings(groups):
    with pytest.raises(InvalidGraphError):
        Clustering.from_groups(groups, n=3)


def test_from_undirected_is_balanced():
    net = from_undirected(3, [(0, 1, 2.0), (1, 2, 0.5)], np.eye(3)[:, :1], np.eye(3)[:1])
    assert net.m == 4
    assert is_balanced(net)
    L = laplacian(net)
    np.testing.assert_allclose(L, L.T)


def test_from_undirected_rejects_duplicates():
    with pytest.raises(InvalidGraphError):
        from_undirected(2, [(0, 1, 1.0), (1, 0, 2.0)], np.ones((2, 1)), np.ones((1, 2)))


@given(st.integers(0, 2**32 - 1), st.integers(2, 12), st.booleans())
def test_random_networks_are_strongly_connected(seed, n, balanced):
    net = random_network(np.random.default_rng(seed), n, balanced=balanced)
    assert is_strongly_connected(net)
    np.testing.assert_allclose(laplacian(net).sum(axis=1), np.zeros(n), atol=1e-12)
    if balanced:
        assert is_balanced(net, tol=1e-9)


@given(st.integers(0, 2**32 - 1), st.integers(2, 10))
def test_random_undirected_networks_are_balanced(seed, n):
    net = random_undirected_network(np.random.default_rng(seed), n)
    assert is_balanced(net)


@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.data())
def test_random_clustering_has_no_empty_cluster(seed, n, data):
    r = data.draw(st.integers(1, n))
    clustering = random_clustering(np.random.default_rng(seed), n, r)
    assert clustering.r == r
    assert np.all(clustering.sizes >= 1)


def test_random_clustering_rejects_too_many_clusters(rng):
    with pytest.raises(ConfigurationError):
        random_clustering(rng, 3, 4)


@given(st.integers(0, 2**32 - 1), st.integers(2, 9))
def test_relabeling_permutes_laplacian(seed, n):
    rng = np.random.default_rng(seed)
    net = random_network(rng, n, balanced=bool(seed % 2))
    perm = rng.permutation(n)
    P = np.zeros((n, n))
    P[perm, np.arange(n)] = 1.0
    relabeled = DirectedNetwork(
        n=n,
        edges=tuple(Edge(int(perm[e.tail]), int(perm[e.head]), e.weight) for e in net.edges),
        input_map=P @ net.input_map,
        output_map=net.output_map @ P.T,
    )
    np.testing.assert_allclose(laplacian(relabeled), P @ laplacian(net) @ P.T, atol=1e-12)
    assert is_balanced(relabeled) == is_balanced(net)
