"""
Parametrización del conjunto admisible de pesos reducidos.

Los pesos balanceados del cociente satisfacen B̂ŵ = 0. Eliminando la última
fila de B̂ (redundante) queda B̄ de rango r − 1; con una base B̄_a de columnas
de B̄ se despejan los pesos básicos en función de los libres:

    ŵ = T μ,   T = Pᵀ [−B̄_a⁻¹ B̄_b; I]
"""
import logging

import numpy as np

from app.config.settings import settings
from app.models.reduction.reduction_model import QuotientModel, WeightParameterization
from app.utils.exceptions import AdmissibilityError, ConnectivityError

logger = logging.getLogger(__name__)


def from_incidence(B_hat: np.ndarray) -> WeightParameterization:
    """
    Parametrización a partir de una incidencia de cociente cualquiera.

    Las columnas básicas se eligen de forma voraz recorriendo B̄ desde la
    última columna hacia la primera; las primeras aristas quedan libres.

    Raises:
        ConnectivityError: si rank(B̂) < r − 1
    """
    B_hat = np.asarray(B_hat, dtype=float)
    r, m_hat = B_hat.shape
    B_bar = B_hat[:-1, :]
    target = r - 1

    if target > 0 and np.linalg.matrix_rank(B_bar) < target:
        raise ConnectivityError(
            f"rank(B̂) = {np.linalg.matrix_rank(B_bar)} < r − 1 = {target}; cociente no conexo."
        )

    basic: list[int] = []
    for k in reversed(range(m_hat)):
        if len(basic) == target:
            break
        trial = basic + [k]
        if np.linalg.matrix_rank(B_bar[:, trial]) == len(trial):
            basic.append(k)
    basic.sort()
    free = [k for k in range(m_hat) if k not in basic]

    B_a = B_bar[:, basic]
    B_b = B_bar[:, free]
    lift = np.zeros((m_hat, len(free)))
    if basic:
        lift[basic, :] = -np.linalg.solve(B_a, B_b)
    lift[free, :] = np.eye(len(free))

    return WeightParameterization(
        basic=tuple(basic),
        free=tuple(free),
        B_a=B_a,
        B_b=B_b,
        lift=lift,
    )


def parameterize(q: QuotientModel) -> WeightParameterization:
    p = from_incidence(q.B_hat)
    logger.info(f"Parametrización: m̄={p.m_bar} variables libres, aristas libres {[k + 1 for k in p.free]}")
    return p


def weights_from_mu(p: WeightParameterization, mu) -> np.ndarray:
    mu = np.asarray(mu, dtype=float).reshape(-1)
    if mu.size != p.m_bar:
        raise AdmissibilityError(f"μ debe tener {p.m_bar} componentes, tiene {mu.size}.")
    return p.lift @ mu


def mu_from_weights(p: WeightParameterization, w_hat, tol: float | None = None) -> np.ndarray:
    """
    Inversa de `weights_from_mu` sobre el rango de T.

    Raises:
        AdmissibilityError: si ŵ no está en el rango de T (residuo > tol)
    """
    w = np.asarray(w_hat, dtype=float).reshape(-1)
    if w.size != p.m_hat:
        raise AdmissibilityError(f"ŵ debe tener {p.m_hat} componentes, tiene {w.size}.")
    if tol is None:
        tol = settings.RANGE_TOL * max(1.0, np.max(np.abs(w), initial=0.0))

    if p.m_bar == 0:
        mu = np.zeros(0)
    else:
        mu = np.linalg.lstsq(p.lift, w, rcond=None)[0]
    residual = float(np.max(np.abs(p.lift @ mu - w), initial=0.0))
    if residual > tol:
        raise AdmissibilityError(
            f"Los pesos no son balanceados: residuo {residual:.3e} fuera del rango de T."
        )
    return mu
