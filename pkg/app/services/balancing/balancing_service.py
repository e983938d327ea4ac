"""
Servicio de balanceo.

Un grafo fuertemente conexo no balanceado se convierte en uno balanceado
escalando cada fila del Laplaciano por la masa del vértice: M = diag(v) con
vᵀL = 0 (vector de Perron izquierdo) normalizado a 1ᵀv = n.
"""
import logging
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import null_space

from app.models.graph.network_model import DirectedNetwork, Edge, IncidenceDecomposition
from app.models.reduction.reduction_model import BalancedRepresentation
from app.services.graph.graph_service import (
    incidence,
    is_balanced,
    is_strongly_connected,
    laplacian,
)
from app.utils.exceptions import ConnectivityError, NumericalError

logger = logging.getLogger(__name__)


def left_perron_vector(L: np.ndarray) -> np.ndarray:
    """
    Vector v > 0 con vᵀL = 0 y 1ᵀv = n.

    Raises:
        ConnectivityError: si el núcleo izquierdo no es unidimensional
        NumericalError: si v no resulta estrictamente positivo
    """
    n = L.shape[0]
    kernel = null_space(L.T)
    if kernel.shape[1] != 1:
        raise ConnectivityError(
            f"El núcleo izquierdo del Laplaciano tiene dimensión {kernel.shape[1]}; "
            "el grafo no es fuertemente conexo."
        )

    v = kernel[:, 0]
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    if v.min() <= 1e-12 * v.max():
        raise NumericalError(
            f"Vector de Perron izquierdo no estrictamente positivo (mínimo {v.min():.3e})."
        )
    return v * (n / v.sum())


def balanced_representation(net: DirectedNetwork) -> BalancedRepresentation:
    """
    Representación balanceada (M, L_b, F_b) de la red.

    Si el grafo ya está balanceado se devuelve M = I exactamente.
    """
    if not is_strongly_connected(net):
        raise ConnectivityError("El grafo no es fuertemente conexo; no se puede balancear.")

    L = laplacian(net)
    F = np.array(net.input_map)
    if is_balanced(net):
        masses = np.ones(net.n)
        logger.info("Grafo balanceado: M = I")
    else:
        masses = left_perron_vector(L)
        logger.info(f"Masas de balanceo calculadas: min={masses.min():.4g}, max={masses.max():.4g}")

    return BalancedRepresentation(
        masses=masses,
        L=L,
        F=F,
        L_b=masses[:, None] * L,
        F_b=masses[:, None] * F,
    )


def balanced_incidence(net: DirectedNetwork, rep: BalancedRepresentation) -> IncidenceDecomposition:
    """
    Incidencia del grafo balanceado G_b: la arista (u → v, w) pasa a pesar
    M_v·w, de modo que B0 diag(w_b) Bᵀ = L_b.
    """
    decomposition = incidence(net)
    weights_b = rep.masses[net.heads] * net.weights if net.m else net.weights
    edges_b = tuple(Edge(e.tail, e.head, float(w)) for e, w in zip(net.edges, weights_b))
    return IncidenceDecomposition(
        B=decomposition.B,
        B0=decomposition.B0,
        weights=weights_b,
        edges=edges_b,
    )


def simulate(
    rep: BalancedRepresentation,
    output_map: np.ndarray,
    u: Callable[[float], np.ndarray],
    t_eval: np.ndarray,
    x0: np.ndarray | None = None,
    balanced: bool = False,
) -> np.ndarray:
    """
    Integra la red y devuelve la salida y(t) (q × len(t_eval)).

    Con `balanced=True` integra M ẋ = −L_b x + F_b u; en caso contrario
    ẋ = −L x + F u. Ambas formas describen el mismo sistema.
    """
    n = rep.n
    x0 = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float)

    if balanced:
        inverse_masses = 1.0 / rep.masses

        def rhs(t, x):
            return inverse_masses * (-rep.L_b @ x + rep.F_b @ np.atleast_1d(u(t)))
    else:
        def rhs(t, x):
            return -rep.L @ x + rep.F @ np.atleast_1d(u(t))

    solution = solve_ivp(
        rhs,
        (float(t_eval[0]), float(t_eval[-1])),
        x0,
        t_eval=t_eval,
        rtol=1e-9,
        atol=1e-12,
    )
    if not solution.success:
        raise NumericalError(f"Falló la integración: {solution.message}")
    return np.asarray(output_map) @ solution.y
