"""
Modelos del sistema de error: matrices de deflación y realizaciones.
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class DeflationPair:
    """
    S_k = [−I_{k−1}; 1ᵀ] y su inversa izquierda ponderada
    S_k⁺ = (S_kᵀ M⁻¹ S_k)⁻¹ S_kᵀ M⁻¹, para k = n y k = r.
    """
    S_n: np.ndarray
    S_n_pinv: np.ndarray
    S_r: np.ndarray
    S_r_pinv: np.ndarray


@dataclass(frozen=True, eq=False)
class ErrorRealization:
    """
    Sistema de error deflactado (A, B, C) y su versión sin deflactar.

    El bloque original ocupa los primeros `n_block = n − 1` estados y el
    reducido los últimos `r_block = r − 1`. `consensus_gain` es la ganancia
    σ⁻¹(H11ᵀF_b − Ĥ11ᵀF̂_b) del modo de consenso eliminado; se anula cuando Ĥ = HΠ.
    """
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    A_full: np.ndarray
    B_full: np.ndarray
    C_full: np.ndarray
    consensus_gain: np.ndarray
    n_block: int
    r_block: int
