"""
Servicio de LMIs para la cota H2 del error de reducción.

El sistema de error deflactado se escribe como A_e(μ) = Ā + E·Ā_r(μ), donde
solo Ā_r depende de los pesos reducidos. La cota queda como una diferencia
de funciones convexas en μ:

    ψ(Q̂, δ̂) + φ(μ) ≺ 0

con ψ lineal en (Q̂, δ̂) y φ cóncava en μ. Linealizando φ alrededor de μ_k
se obtiene un SDP convexo cuya solución es factible para la cota original
(procedimiento convexo-cóncavo).

Las funciones de este módulo aceptan arreglos numpy; `psi_map` acepta
además expresiones cvxpy para armar los programas.
"""
import logging

import cvxpy as cp
import numpy as np

from app.config.settings import settings
from app.models.optimization.optimization_enums import LmiForm, SolverStatus
from app.models.optimization.optimization_model import ConicProgram, ReductionData, SolverOutcome
from app.models.reduction.reduction_model import BalancedRepresentation, QuotientModel, WeightParameterization
from app.services.analysis.h2_service import deflated_block, deflation
from app.services.reduction.parameterization_service import mu_from_weights
from app.utils.exceptions import SolverError
from app.utils.matrices import symmetric_part

logger = logging.getLogger(__name__)


def build_reduction_data(
    rep: BalancedRepresentation,
    output_map: np.ndarray,
    q: QuotientModel,
    p: WeightParameterization,
) -> ReductionData:
    """Arma las matrices fijas de la cota: Ā, E, B_e, C_e y la base de A_r."""
    H = np.asarray(output_map, dtype=float)
    n, r = rep.n, q.r
    n1, r1 = n - 1, r - 1
    N = n1 + r1
    D = deflation(n, r, rep.masses, q.masses_hat)

    A_orig = deflated_block(D.S_n, D.S_n_pinv, rep.L_b, rep.masses)
    A_bar = np.zeros((N, N))
    A_bar[:n1, :n1] = A_orig
    E = np.zeros((N, N))
    E[n1:, :r1] = np.eye(r1)

    B_e = np.vstack([D.S_n_pinv @ rep.F_b, D.S_r_pinv @ q.F_b_hat])
    C_e = np.hstack([H @ (D.S_n / rep.masses[:, None]), -q.H_hat @ (D.S_r / q.masses_hat[:, None])])

    # A_r(ŵ) = left · diag(ŵ) · right
    left = -D.S_r_pinv @ q.B0_hat
    right = q.B_hat.T @ (D.S_r / q.masses_hat[:, None])
    ar_basis = np.zeros((p.m_bar, r1, r1))
    for i in range(p.m_bar):
        ar_basis[i] = left @ (p.lift[:, i][:, None] * right)

    return ReductionData(
        rep=rep,
        output_map=H,
        quotient=q,
        parameterization=p,
        deflation=D,
        A_orig=A_orig,
        A_bar=A_bar,
        E=E,
        B_e=B_e,
        C_e=C_e,
        ar_basis=ar_basis,
    )


def reduced_block(data: ReductionData, mu) -> np.ndarray:
    """A_r(μ) = −S_r⁺ B̂0 diag(Tμ) B̂ᵀ M̂⁻¹ S_r."""
    mu = np.asarray(mu, dtype=float).reshape(-1)
    if data.m_bar == 0:
        return np.zeros((data.r_block, data.r_block))
    return np.tensordot(mu, data.ar_basis, axes=1)


def reduced_block_from_weights(data: ReductionData, w_hat) -> np.ndarray:
    """A_r evaluado directamente sobre ŵ (sin pasar por μ)."""
    q, D = data.quotient, data.deflation
    w = np.asarray(w_hat, dtype=float)
    right = q.B_hat.T @ (D.S_r / q.masses_hat[:, None])
    return -D.S_r_pinv @ (q.B0_hat * w) @ right


def embed_reduced_block(data: ReductionData, A_r: np.ndarray) -> np.ndarray:
    """Ā_r (N×N): A_r en las filas de los primeros r−1 estados y las columnas del bloque reducido."""
    N, n1, r1 = data.N, data.n_block, data.r_block
    A_r_bar = np.zeros((N, N))
    A_r_bar[:r1, n1:] = A_r
    return A_r_bar


def error_matrix(data: ReductionData, mu) -> np.ndarray:
    """A_e(μ) = Ā + E·Ā_r(μ)."""
    return data.A_bar + data.E @ embed_reduced_block(data, reduced_block(data, mu))


def phi_a(data: ReductionData, mu) -> np.ndarray:
    """A_r(μ)ᵀ A_r(μ): la parte no lineal de φ."""
    A_r = reduced_block(data, mu)
    return A_r.T @ A_r


def phi_map(data: ReductionData, mu) -> np.ndarray:
    """φ(μ) = [[−Ā_rᵀĀ_r, 0, Ā_rᵀ], [0, 0, 0], [Ā_r, 0, −I]]."""
    N, p, n1 = data.N, data.p, data.n_block
    A = embed_reduced_block(data, reduced_block(data, mu))
    # Ā_rᵀĀ_r solo ocupa el bloque de los estados reducidos
    AtA = np.zeros((N, N))
    AtA[n1:, n1:] = phi_a(data, mu)
    Z_np = np.zeros((N, p))
    return np.block([
        [-AtA, Z_np, A.T],
        [Z_np.T, np.zeros((p, p)), Z_np.T],
        [A, Z_np, -np.eye(N)],
    ])


def dphi(data: ReductionData, mu, h) -> np.ndarray:
    """Derivada direccional de φ en μ a lo largo de h."""
    N, p = data.N, data.p
    A = embed_reduced_block(data, reduced_block(data, mu))
    A_h = embed_reduced_block(data, reduced_block(data, h))
    Z_np = np.zeros((N, p))
    return np.block([
        [-(A_h.T @ A + A.T @ A_h), Z_np, A_h.T],
        [Z_np.T, np.zeros((p, p)), Z_np.T],
        [A_h, Z_np, np.zeros((N, N))],
    ])


def psi_map(data: ReductionData, Q_hat, delta_hat):
    """ψ(Q̂, δ̂) = [[Q̂Ā + ĀᵀQ̂, Q̂B_e, Q̂E], [B_eᵀQ̂, −δ̂I, 0], [EᵀQ̂, 0, 0]]."""
    N, p = data.N, data.p
    blocks = [
        [Q_hat @ data.A_bar + data.A_bar.T @ Q_hat, Q_hat @ data.B_e, Q_hat @ data.E],
        [data.B_e.T @ Q_hat, -delta_hat * np.eye(p), np.zeros((p, N))],
        [data.E.T @ Q_hat, np.zeros((N, p)), np.zeros((N, N))],
    ]
    if isinstance(Q_hat, cp.Expression):
        return cp.bmat(blocks)
    return np.block(blocks)


def congruence(data: ReductionData, mu_k, delta_hat: float) -> np.ndarray:
    """
    S_k = [[I, 0, 0], [0, I, 0], [Ā_r(μ_k), 0, I]] · diag(δ̂^{-1/2} I, δ̂^{-1/2} I, I).

    S_kᵀ(ψ + φ)S_k tiene la misma inercia que ψ + φ y entradas de orden uno.
    """
    N, p = data.N, data.p
    size = data.lmi_size
    T = np.eye(size)
    T[N + p:, :N] = embed_reduced_block(data, reduced_block(data, mu_k))
    scaling = np.ones(size)
    scaling[:N + p] = 1.0 / np.sqrt(delta_hat)
    return T * scaling[None, :]


def _bound_program(
    data: ReductionData,
    mu_k: np.ndarray,
    delta_hat: float,
    eps_psd: float,
    free_mu: bool,
) -> ConicProgram:
    N, q, size = data.N, data.q, data.lmi_size
    Q = cp.Variable((N, N), symmetric=True, name="Q")
    R = cp.Variable((q, q), symmetric=True, name="R")
    program = ConicProgram(variables={"Q": Q, "R": R}, objective=cp.trace(R))

    lmi = psi_map(data, delta_hat * Q, delta_hat) + phi_map(data, mu_k)
    if free_mu:
        mu = cp.Variable(data.m_bar, name="mu")
        program.variables["mu"] = mu
        for i in range(data.m_bar):
            lmi = lmi + (mu[i] - mu_k[i]) * dphi(data, mu_k, np.eye(data.m_bar)[i])

    S_k = congruence(data, mu_k, delta_hat)
    program.add_psd("cota_h2", -symmetric_part(S_k.T @ lmi @ S_k) - eps_psd * size * np.eye(size), size)
    program.add_psd("gramiano", Q - eps_psd * N * np.eye(N), N)
    program.add_psd(
        "salida",
        cp.bmat([[Q, data.C_e.T], [data.C_e, R]]) - eps_psd * (N + q) * np.eye(N + q),
        N + q,
    )
    return program


def linearized_subproblem(
    data: ReductionData,
    mu_k,
    delta_hat: float,
    w_min: float,
    eps_psd: float | None = None,
) -> ConicProgram:
    """
    Subproblema convexo en (Q, R, μ) alrededor de μ_k:

        min tr(R)
        s.a. ψ(δ̂Q, δ̂) + φ(μ_k) + Dφ(μ_k)[μ − μ_k] ≺ 0
             [[Q, C_eᵀ], [C_e, R]] ≻ 0,  Q ≻ 0,  Tμ ≥ w_min

    Las variables se guardan sin escalar (Q̂ = δ̂Q, R̂ = δ̂R).
    """
    eps_psd = settings.EPS_PSD if eps_psd is None else eps_psd
    mu_k = np.asarray(mu_k, dtype=float).reshape(-1)
    program = _bound_program(data, mu_k, delta_hat, eps_psd, free_mu=data.m_bar > 0)
    if data.m_bar > 0:
        program.add_nonneg("peso_minimo", data.parameterization.lift @ program.variables["mu"] - w_min)
    return program


def _trivial_outcome() -> SolverOutcome:
    # n = 1: el error es idénticamente nulo
    return SolverOutcome(status=SolverStatus.OPTIMAL, values={}, objective=0.0, solver="none")


def minimize_bound(
    data: ReductionData,
    w_hat,
    delta_hat: float,
    solver,
    eps_psd: float | None = None,
) -> SolverOutcome:
    """Cota con ŵ fijo: min tr(R) sujeto a las LMIs de la cota escalada."""
    if data.N == 0:
        return _trivial_outcome()
    eps_psd = settings.EPS_PSD if eps_psd is None else eps_psd
    mu = mu_from_weights(data.parameterization, w_hat)
    program = _bound_program(data, mu, delta_hat, eps_psd, free_mu=False)
    return solver.solve(program)


def scaled_bound_feasible(
    data: ReductionData,
    w_hat,
    gamma_hat: float,
    delta_hat: float,
    solver,
    eps_psd: float | None = None,
) -> SolverOutcome:
    """
    ¿Existen Q̂ ≻ 0, R̂ con tr(R̂) < γ̂ que satisfacen la forma escalada?

    Un veredicto factible certifica ‖G − Ĝ‖²_H2 < γ̂/δ̂.
    """
    if data.N == 0:
        return _trivial_outcome()
    eps_psd = settings.EPS_PSD if eps_psd is None else eps_psd
    mu = mu_from_weights(data.parameterization, w_hat)
    program = _bound_program(data, mu, delta_hat, eps_psd, free_mu=False)
    R = program.variables["R"]
    program.add_nonneg("traza", gamma_hat / delta_hat - eps_psd - cp.trace(R))
    return solver.solve(program)


def standard_h2_feasible(
    data: ReductionData,
    w_hat,
    gamma: float,
    solver,
    eps_psd: float | None = None,
) -> SolverOutcome:
    """
    Forma clásica: [[QA_e + A_eᵀQ, QB_e], [B_eᵀQ, −I]] ≺ 0,
    [[Q, C_eᵀ], [C_e, R]] ≻ 0 y tr(R) < γ.
    """
    if data.N == 0:
        return _trivial_outcome()
    eps_psd = settings.EPS_PSD if eps_psd is None else eps_psd
    N, p, q = data.N, data.p, data.q
    A_e = error_matrix(data, mu_from_weights(data.parameterization, w_hat))

    Q = cp.Variable((N, N), symmetric=True, name="Q")
    R = cp.Variable((q, q), symmetric=True, name="R")
    program = ConicProgram(variables={"Q": Q, "R": R}, objective=cp.trace(R))
    lyapunov = cp.bmat([[Q @ A_e + A_e.T @ Q, Q @ data.B_e], [data.B_e.T @ Q, -np.eye(p)]])
    program.add_psd("lyapunov", -lyapunov - eps_psd * (N + p) * np.eye(N + p), N + p)
    program.add_psd("gramiano", Q - eps_psd * N * np.eye(N), N)
    program.add_psd(
        "salida",
        cp.bmat([[Q, data.C_e.T], [data.C_e, R]]) - eps_psd * (N + q) * np.eye(N + q),
        N + q,
    )
    program.add_nonneg("traza", gamma - eps_psd - cp.trace(R))
    return solver.solve(program)


def bisect_h2_bound(
    data: ReductionData,
    w_hat,
    solver,
    form: LmiForm = LmiForm.SCALED,
    lo: float = 0.0,
    hi: float = 1.0,
    rel_tol: float = 1e-3,
    delta_hat: float | None = None,
    max_doublings: int = 40,
    abs_tol: float = 1e-12,
    max_bisections: int = 100,
) -> float:
    """
    Menor γ (cota de ‖G − Ĝ‖²_H2) con veredicto factible, por bisección.

    Se detiene cuando el intervalo es menor que rel_tol·γ o cuando γ ≤ abs_tol
    (error prácticamente nulo).

    Raises:
        SolverError: si ningún γ razonable resulta factible o si la
            bisección no converge en `max_bisections` pasos
    """
    delta_hat = settings.DELTA_HAT if delta_hat is None else delta_hat

    def feasible(gamma: float) -> bool:
        if form is LmiForm.SCALED:
            return scaled_bound_feasible(data, w_hat, gamma * delta_hat, delta_hat, solver).ok
        return standard_h2_feasible(data, w_hat, gamma, solver).ok

    for _ in range(max_doublings):
        if feasible(hi):
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise SolverError(f"No se encontró una cota H2 factible hasta γ = {hi:.3e}.")

    for _ in range(max_bisections):
        if hi - lo <= rel_tol * hi or hi <= abs_tol:
            logger.info(f"Cota H2 por bisección ({form.value}): γ* = {hi:.6g}")
            return hi
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    raise SolverError(
        f"La bisección no convergió en {max_bisections} pasos (γ ∈ [{lo:.6g}, {hi:.6g}])."
    )
