"""
Modelos de la reducción: representación balanceada, cociente,
parametrización de pesos y sistema reducido.
"""
from dataclasses import dataclass

import numpy as np

from app.models.graph.network_model import Clustering


@dataclass(frozen=True, eq=False)
class BalancedRepresentation:
    """
    M ẋ = −L_b x + F_b u con L_b = M·L y F_b = M·F.

    `masses` es la diagonal de M (vector de Perron izquierdo normalizado a
    suma n, o exactamente unos si el grafo ya es balanceado).
    """
    masses: np.ndarray
    L: np.ndarray
    F: np.ndarray
    L_b: np.ndarray
    F_b: np.ndarray

    @property
    def n(self) -> int:
        return self.masses.size

    @property
    def M(self) -> np.ndarray:
        return np.diag(self.masses)

    @property
    def sigma(self) -> float:
        return float(self.masses.sum())


@dataclass(frozen=True, eq=False)
class QuotientModel:
    """
    Grafo cociente: incidencia B̂ (r×m̂) con aristas tail_cluster → head_cluster
    en orden de primera aparición, masas M̂ = Πᵀ M Π y mapas F̂_b, Ĥ.
    """
    B_hat: np.ndarray
    B0_hat: np.ndarray
    edge_map: tuple[tuple[int, int], ...]
    masses_hat: np.ndarray
    F_b_hat: np.ndarray
    H_hat: np.ndarray
    clustering: Clustering
    Pi: np.ndarray

    @property
    def r(self) -> int:
        return self.B_hat.shape[0]

    @property
    def m_hat(self) -> int:
        return self.B_hat.shape[1]


@dataclass(frozen=True, eq=False)
class WeightParameterization:
    """
    ŵ = T μ con T = Pᵀ[−B̄_a⁻¹ B̄_b; I].

    `basic` son las columnas de B̄ que forman la base B̄_a y `free` las
    columnas cuyos pesos son las coordenadas libres μ (en orden creciente).
    """
    basic: tuple[int, ...]
    free: tuple[int, ...]
    B_a: np.ndarray
    B_b: np.ndarray
    lift: np.ndarray

    @property
    def m_hat(self) -> int:
        return self.lift.shape[0]

    @property
    def m_bar(self) -> int:
        return self.lift.shape[1]

    @property
    def P(self) -> np.ndarray:
        """Permutación que lleva ŵ a [ŵ_básicos; ŵ_libres]."""
        order = list(self.basic) + list(self.free)
        return np.eye(self.m_hat)[order]


@dataclass(frozen=True, eq=False)
class ReducedSystem:
    """Modelo reducido ẋ̂ = −L̂ x̂ + F̂ u, ŷ = Ĥ x̂."""
    L_hat: np.ndarray
    F_hat: np.ndarray
    H_hat: np.ndarray
    L_b_hat: np.ndarray
    weights: np.ndarray

    @property
    def r(self) -> int:
        return self.L_hat.shape[0]
