"""
Servicio de análisis H2.

El sistema de error entre la red y su modelo reducido tiene un modo de
consenso marginalmente estable (un integrador por cada modelo). Se elimina
con las matrices de deflación S_n, S_r y la norma H2 se evalúa sobre el
sistema deflactado, que es Hurwitz.
"""
import logging

import numpy as np
from scipy.linalg import block_diag, solve, solve_continuous_lyapunov, solve_sylvester

from app.config.settings import settings
from app.models.analysis.analysis_model import DeflationPair, ErrorRealization
from app.models.reduction.reduction_model import BalancedRepresentation, QuotientModel
from app.services.reduction.reduction_service import is_admissible, reduced_system
from app.utils.exceptions import AdmissibilityError, NumericalError

logger = logging.getLogger(__name__)


def deflation_matrix(k: int) -> np.ndarray:
    """S_k = [−I_{k−1}; 1ᵀ] de tamaño k×(k−1)."""
    return np.vstack([-np.eye(k - 1), np.ones((1, k - 1))])


def weighted_left_inverse(S: np.ndarray, masses: np.ndarray) -> np.ndarray:
    """S⁺ = (Sᵀ M⁻¹ S)⁻¹ Sᵀ M⁻¹."""
    if S.shape[1] == 0:
        return np.zeros((0, S.shape[0]))
    scaled = S.T / masses[None, :]
    return solve(scaled @ S, scaled, assume_a="pos")


def deflation(n: int, r: int, masses: np.ndarray, masses_hat: np.ndarray) -> DeflationPair:
    S_n = deflation_matrix(n)
    S_r = deflation_matrix(r)
    return DeflationPair(
        S_n=S_n,
        S_n_pinv=weighted_left_inverse(S_n, np.asarray(masses, dtype=float)),
        S_r=S_r,
        S_r_pinv=weighted_left_inverse(S_r, np.asarray(masses_hat, dtype=float)),
    )


def deflated_block(S: np.ndarray, S_pinv: np.ndarray, L_b: np.ndarray, masses: np.ndarray) -> np.ndarray:
    """−S⁺ L_b M⁻¹ S."""
    return -S_pinv @ L_b @ (S / masses[:, None])


def error_realization(
    rep: BalancedRepresentation,
    output_map: np.ndarray,
    q: QuotientModel,
    w_hat,
) -> ErrorRealization:
    """
    Realización deflactada (A_e, B_e, C_e) del error y(t) − ŷ(t).

    Raises:
        AdmissibilityError: si ŵ no es positivo o no balancea el cociente
        NumericalError: si A_e no resulta Hurwitz
    """
    w = np.asarray(w_hat, dtype=float)
    if not is_admissible(q, w, tol=settings.RANGE_TOL):
        raise AdmissibilityError("Los pesos reducidos no son admisibles (ŵ > 0 y B̂ŵ = 0).")

    H = np.asarray(output_map, dtype=float)
    rs = reduced_system(q, w)
    n, r = rep.n, q.r
    D = deflation(n, r, rep.masses, q.masses_hat)

    A_orig = deflated_block(D.S_n, D.S_n_pinv, rep.L_b, rep.masses)
    A_red = deflated_block(D.S_r, D.S_r_pinv, rs.L_b_hat, q.masses_hat)
    A = block_diag(A_orig, A_red)
    B = np.vstack([D.S_n_pinv @ rep.F_b, D.S_r_pinv @ q.F_b_hat])
    C = np.hstack([H @ (D.S_n / rep.masses[:, None]), -rs.H_hat @ (D.S_r / q.masses_hat[:, None])])

    if not is_hurwitz(A):
        raise NumericalError("El sistema de error deflactado no es Hurwitz.")

    sigma = rep.sigma
    consensus_gain = (
        H @ np.ones((n, 1)) @ np.ones((1, n)) @ rep.F_b
        - rs.H_hat @ np.ones((r, 1)) @ np.ones((1, r)) @ q.F_b_hat
    ) / sigma

    return ErrorRealization(
        A=A,
        B=B,
        C=C,
        A_full=-block_diag(rep.L, rs.L_hat),
        B_full=np.vstack([rep.F, rs.F_hat]),
        C_full=np.hstack([H, -rs.H_hat]),
        consensus_gain=consensus_gain,
        n_block=n - 1,
        r_block=r - 1,
    )


def is_hurwitz(A: np.ndarray, tol: float | None = None) -> bool:
    """max Re λ(A) < −tol·‖A‖₂ (la matriz vacía es Hurwitz)."""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return True
    tol = settings.HURWITZ_TOL if tol is None else tol
    return bool(np.linalg.eigvals(A).real.max() < -tol * np.linalg.norm(A, 2))


def consensus_check(L_hat: np.ndarray, tol: float | None = None) -> bool:
    """Un único autovalor nulo y el resto con parte real positiva."""
    L_hat = np.asarray(L_hat, dtype=float)
    if L_hat.shape[0] == 1:
        return True
    tol = settings.CONSENSUS_TOL if tol is None else tol
    eigenvalues = np.linalg.eigvals(L_hat)
    zero = np.abs(eigenvalues) <= tol
    return bool(zero.sum() == 1 and np.all(eigenvalues[~zero].real > 0))


def controllability_gramian(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """
    P con A P + P Aᵀ + B Bᵀ = 0.

    Raises:
        NumericalError: si el residuo relativo supera LYAPUNOV_TOL
    """
    BBt = B @ B.T
    P = solve_continuous_lyapunov(A, -BBt)
    P = (P + P.T) / 2
    residual = np.linalg.norm(A @ P + P @ A.T + BBt, "fro")
    scale = np.linalg.norm(BBt, "fro")
    if residual > settings.LYAPUNOV_TOL * max(scale, np.finfo(float).tiny):
        raise NumericalError(f"Ecuación de Lyapunov mal condicionada: residuo {residual:.3e}.")
    return P


def h2_norm(A: np.ndarray, B: np.ndarray, C: np.ndarray, cross_check: bool = False) -> float:
    """
    ‖C (sI − A)⁻¹ B‖_H2 vía el Gramiano de controlabilidad.

    Con `cross_check` también se evalúa con el Gramiano de observabilidad
    y se avisa si ambos valores difieren en más de 1e-9 relativo.

    Raises:
        NumericalError: si A no es Hurwitz
    """
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0.0
    if not is_hurwitz(A):
        raise NumericalError("La matriz A no es Hurwitz; la norma H2 no es finita.")
    P = controllability_gramian(A, np.asarray(B, dtype=float))
    value = float(np.sqrt(max(np.trace(C @ P @ C.T), 0.0)))
    if cross_check:
        other = h2_norm_observability(A, B, C)
        if abs(value - other) > 1e-9 * max(value, other, 1.0):
            logger.warning(f"Norma H2 inconsistente: controlabilidad {value:.12g}, observabilidad {other:.12g}")
    return value


def h2_norm_observability(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> float:
    """Misma norma vía el Gramiano de observabilidad: tr(Bᵀ Q B)."""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0.0
    if not is_hurwitz(A):
        raise NumericalError("La matriz A no es Hurwitz; la norma H2 no es finita.")
    Q = controllability_gramian(A.T, np.asarray(C, dtype=float).T)
    return float(np.sqrt(max(np.trace(B.T @ Q @ B), 0.0)))


def transfer_function(A, B, C, s: complex, D=None) -> np.ndarray:
    """G(s) = C (sI − A)⁻¹ B + D."""
    A = np.asarray(A, dtype=float)
    G = np.asarray(C) @ np.linalg.solve(s * np.eye(A.shape[0]) - A, np.asarray(B))
    return G if D is None else G + D


def _difference_h2(realization: ErrorRealization) -> float:
    """
    Norma H2 en coordenadas (x₁, e = x₁ − x₂) cuando ambos bloques tienen el
    mismo tamaño. Los bloques del Gramiano se obtienen en cascada:

        A₁P₁₁ + P₁₁A₁ᵀ + B₁B₁ᵀ = 0
        A₂P₂₁ + P₂₁A₁ᵀ + ΔA P₁₁ + ΔB B₁ᵀ = 0
        A₂P₂₂ + P₂₂A₂ᵀ + ΔA P₁₂ + P₂₁ΔAᵀ + ΔB ΔBᵀ = 0
    """
    k = realization.n_block
    A, B, C = realization.A, realization.B, realization.C
    A1, A2 = A[:k, :k], A[k:, k:]
    B1, B2 = B[:k], B[k:]
    C1, C2 = C[:, :k], -C[:, k:]

    dA = A1 - A2
    dB = B1 - B2
    Cx = C1 - C2

    P11 = solve_continuous_lyapunov(A1, -B1 @ B1.T)
    P11 = (P11 + P11.T) / 2
    P21 = solve_sylvester(A2, A1.T, -(dA @ P11 + dB @ B1.T))
    forcing = dA @ P21.T + P21 @ dA.T + dB @ dB.T
    P22 = solve_continuous_lyapunov(A2, -forcing)
    P22 = (P22 + P22.T) / 2

    value = (
        np.trace(Cx @ P11 @ Cx.T)
        + 2.0 * np.trace(Cx @ P21.T @ C2.T)
        + np.trace(C2 @ P22 @ C2.T)
    )
    return float(np.sqrt(max(value, 0.0)))


def reduction_error(
    rep: BalancedRepresentation,
    output_map: np.ndarray,
    q: QuotientModel,
    w_hat,
) -> float:
    """Error H2 ‖G − Ĝ(ŵ)‖ entre la red y el modelo reducido."""
    realization = error_realization(rep, output_map, q, w_hat)
    if realization.n_block == realization.r_block:
        if realization.n_block == 0:
            return 0.0
        return _difference_h2(realization)
    return h2_norm(realization.A, realization.B, realization.C)
