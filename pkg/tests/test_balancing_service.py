import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from app.models.graph.network_model import DirectedNetwork, Edge
from app.services.balancing.balancing_service import (
    balanced_incidence,
    balanced_representation,
    left_perron_vector,
    simulate,
)
from app.services.graph.generator_service import random_network
from app.services.graph.graph_service import laplacian
from app.utils.exceptions import ConnectivityError


def _unbalanced_triangle():
    # ciclo 1 → 2 → 3 → 1 más la cuerda 1 → 3
    arcs = [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (0, 2, 0.5)]
    return DirectedNetwork(
        n=3,
        edges=tuple(Edge(*a) for a in arcs),
        input_map=np.array([[1.0], [0.0], [0.0]]),
        output_map=np.array([[0.0, 0.0, 1.0]]),
    )


def test_balanced_graph_keeps_unit_masses(formation):
    rep = balanced_representation(formation)
    np.testing.assert_array_equal(rep.masses, np.ones(6))
    np.testing.assert_array_equal(rep.L_b, rep.L)
    assert rep.sigma == 6.0


def test_left_perron_vector_of_unbalanced_triangle():
    net = _unbalanced_triangle()
    v = left_perron_vector(laplacian(net))
    assert np.all(v > 0)
    assert v.sum() == pytest.approx(3.0)
    np.testing.assert_allclose(v @ laplacian(net), np.zeros(3), atol=1e-12)


def test_left_perron_vector_rejects_disconnected():
    L = np.array([[1.0, -1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    with pytest.raises(ConnectivityError):
        left_perron_vector(L)


def test_balancing_requires_strong_connectivity():
    net = DirectedNetwork(
        n=2, edges=(Edge(0, 1, 1.0),), input_map=np.ones((2, 1)), output_map=np.ones((1, 2))
    )
    with pytest.raises(ConnectivityError):
        balanced_representation(net)


@given(st.integers(0, 2**32 - 1), st.integers(3, 10))
def test_balanced_laplacian_has_zero_row_and_column_sums(seed, n):
    net = random_network(np.random.default_rng(seed), n, balanced=False, extra_edge_prob=0.4)
    rep = balanced_representation(net)
    assert np.all(rep.masses > 0)
    assert rep.sigma == pytest.approx(n)
    scale = np.abs(rep.L_b).max()
    np.testing.assert_allclose(rep.L_b.sum(axis=0), np.zeros(n), atol=1e-9 * scale)
    np.testing.assert_allclose(rep.L_b.sum(axis=1), np.zeros(n), atol=1e-9 * scale)


@given(st.integers(0, 2**32 - 1), st.integers(3, 10))
def test_balanced_incidence_reproduces_balanced_laplacian(seed, n):
    net = random_network(np.random.default_rng(seed), n, balanced=False)
    rep = balanced_representation(net)
    decomposition = balanced_incidence(net, rep)
    np.testing.assert_allclose(decomposition.B0 @ decomposition.W @ decomposition.B.T, rep.L_b, atol=1e-12)
    np.testing.assert_allclose(decomposition.B @ decomposition.weights, np.zeros(n), atol=1e-9 * n)


def test_balanced_and_original_dynamics_agree():
    net = _unbalanced_triangle()
    rep = balanced_representation(net)
    t = np.linspace(0.0, 5.0, 51)

    def u(time):
        return np.array([np.sin(time)])

    y = simulate(rep, net.output_map, u, t)
    y_b = simulate(rep, net.output_map, u, t, balanced=True)
    np.testing.assert_allclose(y, y_b, atol=1e-7)


def test_step_response_reaches_consensus():
    net = _unbalanced_triangle()
    rep = balanced_representation(net)
    t = np.linspace(0.0, 40.0, 5)
    x0 = np.array([1.0, -2.0, 4.0])
    y = simulate(rep, np.eye(3), lambda time: np.zeros(1), t, x0=x0)
    # el consenso es el promedio ponderado por las masas
    consensus = rep.masses @ x0 / rep.sigma
    np.testing.assert_allclose(y[:, -1], np.full(3, consensus), atol=1e-6)


@given(st.integers(0, 2**32 - 1), st.integers(3, 10))
def test_balancing_a_balanced_graph_gives_unit_masses(seed, n):
    net = random_network(np.random.default_rng(seed), n, balanced=False, extra_edge_prob=0.4)
    rep = balanced_representation(net)
    balanced = DirectedNetwork(
        n=n,
        edges=balanced_incidence(net, rep).edges,
        input_map=net.input_map,
        output_map=net.output_map,
    )
    rep_b = balanced_representation(balanced)
    np.testing.assert_allclose(rep_b.masses, np.ones(n), atol=1e-9)
    np.testing.assert_allclose(rep_b.L_b, rep.L_b, atol=1e-9 * np.abs(rep.L_b).max())


@given(st.integers(0, 2**32 - 1), st.integers(3, 10), st.floats(0.01, 100.0))
def test_masses_do_not_depend_on_weight_scale(seed, n, c):
    net = random_network(np.random.default_rng(seed), n, balanced=False, extra_edge_prob=0.4)
    scaled = DirectedNetwork(
        n=n,
        edges=tuple(Edge(e.tail, e.head, c * e.weight) for e in net.edges),
        input_map=net.input_map,
        output_map=net.output_map,
    )
    np.testing.assert_allclose(
        balanced_representation(scaled).masses, balanced_representation(net).masses, rtol=1e-7, atol=1e-10
    )
