"""
Servicio de optimización de pesos reducidos.
Itera subproblemas linealizados hasta que la cota tr(R) deja de bajar.
"""
import logging
import time

import numpy as np

from app.config.settings import settings
from app.models.optimization.optimization_enums import RunStatus
from app.models.optimization.optimization_model import IterationRecord, IterationTrace, ReductionData
from app.services.analysis.h2_service import reduction_error
from app.services.optimization.lmi_service import linearized_subproblem, minimize_bound
from app.services.reduction.parameterization_service import weights_from_mu
from app.utils.exceptions import ConfigurationError, NetworkReductionError, SolverError

logger = logging.getLogger(__name__)


class EdgeWeightingService:
    """
    Optimizador de pesos del cociente.

    Cada paso resuelve el SDP linealizado alrededor del iterado actual; su
    solución es factible para la cota no linealizada, por lo que la
    secuencia de objetivos es no creciente. Un paso que aumenta la cota (por
    redondeo del solver) se rechaza. Se devuelve el iterado con menor error
    H2 exacto.
    """

    def __init__(self, data: ReductionData, solver):
        self.data = data
        self.solver = solver

    def oracle(self, w_hat: np.ndarray) -> float:
        data = self.data
        return reduction_error(data.rep, data.output_map, data.quotient, w_hat)

    def optimize_weights(
        self,
        mu0,
        delta_hat: float | None = None,
        tol: float | None = None,
        max_iter: int | None = None,
        w_min: float | None = None,
        keep_descending: bool | None = None,
        eps_psd: float | None = None,
    ) -> tuple[np.ndarray, IterationTrace]:
        """
        Ejecuta el procedimiento iterativo desde μ⁽⁰⁾.

        Returns:
            (ŵ*, traza); la fila 0 de la traza es la cota con μ⁽⁰⁾ fijo

        Raises:
            ConfigurationError: si ŵ(μ⁽⁰⁾) viola w_min
            SolverError: si no se puede evaluar la cota inicial
        """
        delta_hat = settings.DELTA_HAT if delta_hat is None else delta_hat
        tol = settings.STOP_TOL if tol is None else tol
        max_iter = settings.MAX_ITER if max_iter is None else max_iter
        keep_descending = settings.KEEP_DESCENDING if keep_descending is None else keep_descending
        data = self.data
        lift = data.parameterization.lift
        # un paso puede subir la cota dentro del ruido del solver
        slack = settings.ACCEPT_TOL_FACTOR * getattr(self.solver, "tol", settings.SOLVER_TOL)

        mu = np.asarray(mu0, dtype=float).reshape(-1)
        w = weights_from_mu(data.parameterization, mu)
        if w_min is None:
            w_min = settings.W_MIN_FACTOR * float(w.max(initial=0.0))
        if w.size and w.min() < w_min:
            raise ConfigurationError(
                f"Los pesos iniciales violan w_min = {w_min:.3e} (mínimo {w.min():.3e})."
            )

        trace = IterationTrace()
        start = time.perf_counter()
        h2 = self.oracle(w)
        outcome = minimize_bound(data, w, delta_hat, self.solver, eps_psd)
        if not outcome.ok:
            raise SolverError(f"No se pudo evaluar la cota inicial: {outcome.diagnostics}")
        f_prev = outcome.objective
        trace.append(IterationRecord(0, f_prev, h2, outcome.status, _elapsed_ms(start), mu.copy()))
        logger.info(f"Iteración 0: tr(R) = {f_prev:.6g}, error H2 = {h2:.6g}")

        if data.m_bar == 0:
            trace.status = RunStatus.CONVERGED
            return w, trace

        trace.status = RunStatus.MAX_ITER
        for k in range(1, max_iter + 1):
            start = time.perf_counter()
            program = linearized_subproblem(data, mu, delta_hat, w_min, eps_psd)
            outcome = self.solver.solve(program)
            if not outcome.ok:
                logger.warning(
                    f"Iteración {k}: subproblema sin solución ({outcome.status.value}); "
                    "se conserva el último iterado"
                )
                trace.status = RunStatus.SOLVER_FAILED
                break

            mu_new = outcome.values["mu"]
            f_new = outcome.objective
            w_new = lift @ mu_new
            try:
                h2_new = self.oracle(w_new) if np.all(w_new > 0) else np.inf
            except NetworkReductionError as e:
                logger.warning(f"Iteración {k}: evaluación del error falló: {e}")
                h2_new = np.inf

            change = abs(f_new - f_prev)
            if f_new > f_prev + slack * max(1.0, abs(f_prev)) or not np.isfinite(h2_new):
                trace.status = RunStatus.CONVERGED if change <= tol else RunStatus.STALLED
                if trace.status is RunStatus.STALLED:
                    logger.warning(
                        f"Iteración {k}: paso rechazado (tr(R) {f_prev:.6g} → {f_new:.6g}, "
                        f"H2 {h2:.6g} → {h2_new:.6g})"
                    )
                break

            h2_drop = h2 - h2_new
            mu, h2, f_prev = mu_new, h2_new, f_new
            trace.append(IterationRecord(k, f_new, h2, outcome.status, _elapsed_ms(start), mu.copy()))
            if h2 < trace.final_error:
                trace.best = len(trace.records) - 1
                w = w_new
            logger.info(f"Iteración {k}: tr(R) = {f_new:.6g}, error H2 = {h2:.6g}")

            if change <= tol:
                if keep_descending and h2_drop > 10 * tol:
                    continue
                trace.status = RunStatus.CONVERGED
                break

        logger.info(
            f"Optimización terminada ({trace.status.value}) tras {trace.iterations} iteraciones: "
            f"error H2 {trace.initial_error:.6g} → {trace.final_error:.6g}"
        )
        return w, trace


def _elapsed_ms(start: float) -> float:
    return 1000.0 * (time.perf_counter() - start)
