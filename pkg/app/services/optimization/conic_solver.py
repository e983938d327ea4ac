"""
Interfaz con el solver cónico.

Un `ConicProgram` se traduce a un problema cvxpy y se resuelve con el solver
configurado (CLARABEL por defecto). Si el solver no está instalado o falla
numéricamente, se reintenta con el de respaldo (SCS). Toda solución se
verifica contra las restricciones antes de aceptarla.
"""
import logging
from typing import Protocol

import cvxpy as cp
import numpy as np

from app.models.optimization.optimization_enums import ConeKind, SolverStatus
from app.models.optimization.optimization_model import ConicProgram, SolverOutcome
from app.utils.matrices import symmetric_part

logger = logging.getLogger(__name__)

_SOLVED = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)


class ConicSolver(Protocol):
    def solve(self, program: ConicProgram) -> SolverOutcome:
        ...


class CvxpyConicSolver:
    """
    Solver cónico sobre cvxpy.

    Cada sesión construye su propio `cp.Problem`, por lo que instancias
    distintas pueden usarse en paralelo desde procesos independientes.
    """

    def __init__(
        self,
        solver: str = "CLARABEL",
        fallback: str | None = "SCS",
        tol: float = 1e-8,
        check_tol: float = 1e-6,
        verbose: bool = False,
    ):
        self.solver = solver.upper()
        self.fallback = fallback.upper() if fallback else None
        self.tol = tol
        self.check_tol = check_tol
        self.verbose = verbose

    def _options(self, name: str) -> dict:
        if name == "CLARABEL":
            return {"tol_feas": self.tol, "tol_gap_abs": self.tol, "tol_gap_rel": self.tol}
        if name == "SCS":
            return {"eps_abs": self.tol, "eps_rel": self.tol, "max_iters": 100_000}
        return {}

    @staticmethod
    def build_problem(program: ConicProgram) -> cp.Problem:
        """Traduce las restricciones etiquetadas a restricciones cvxpy."""
        constraints = []
        for tagged in program.constraints:
            if tagged.cone is ConeKind.PSD:
                size = tagged.expr.shape[0]
                slack = cp.Variable((size, size), symmetric=True, name=f"{tagged.name}_psd")
                constraints += [slack == symmetric_part(tagged.expr), slack >> 0]
            elif tagged.cone is ConeKind.NONNEG:
                constraints.append(tagged.expr >= 0)
            else:
                constraints.append(tagged.expr == 0)
        return cp.Problem(cp.Minimize(program.objective), constraints)

    def solve(self, program: ConicProgram) -> SolverOutcome:
        problem = self.build_problem(program)
        installed = set(cp.installed_solvers())
        candidates = [s for s in (self.solver, self.fallback) if s]

        diagnostics = []
        for name in candidates:
            if name not in installed:
                diagnostics.append(f"{name}: no instalado")
                logger.warning(f"Solver {name} no disponible")
                continue
            try:
                problem.solve(solver=name, verbose=self.verbose, **self._options(name))
            except cp.error.SolverError as e:
                diagnostics.append(f"{name}: {e}")
                logger.warning(f"Solver {name} falló: {e}")
                continue

            violation = max_violation(problem) if problem.status in _SOLVED else float("nan")
            check_tol = self.check_tol * solution_scale(problem)
            status = verified_status(problem.status, violation, check_tol)
            diagnostics.append(f"{name}: {problem.status} (violación {violation:.2e})")
            if status is SolverStatus.NUMERICAL_FAILURE:
                logger.warning(
                    f"Solver {name} terminó con estado {problem.status}; "
                    f"violación máxima {violation:.2e} (tolerancia {check_tol:.1e})"
                )
                continue

            values = {}
            objective = None
            if status is SolverStatus.OPTIMAL:
                values = {
                    key: np.atleast_1d(np.asarray(var.value, dtype=float))
                    for key, var in program.variables.items()
                }
                objective = float(problem.value)
            return SolverOutcome(
                status=status,
                values=values,
                objective=objective,
                solver=name,
                diagnostics="; ".join(diagnostics),
            )

        return SolverOutcome(
            status=SolverStatus.NUMERICAL_FAILURE,
            values={},
            objective=None,
            diagnostics="; ".join(diagnostics),
        )


def verified_status(status: str, violation: float, check_tol: float) -> SolverStatus:
    """
    Estado verificado de un problema resuelto.

    Una solución (exacta o inexacta) solo cuenta como óptima si ninguna
    restricción se viola en más de `check_tol` (ya escalada por el llamador).
    Un veredicto de infactibilidad inexacto no se acepta: se reintenta con
    el respaldo.
    """
    if status in _SOLVED:
        return SolverStatus.OPTIMAL if violation <= check_tol else SolverStatus.NUMERICAL_FAILURE
    if status == cp.INFEASIBLE:
        return SolverStatus.INFEASIBLE
    return SolverStatus.NUMERICAL_FAILURE


def max_violation(problem: cp.Problem) -> float:
    """Mayor violación de las restricciones en el punto actual (inf si falta un valor)."""
    worst = 0.0
    for constraint in problem.constraints:
        try:
            residual = constraint.violation()
        except ValueError:
            return float("inf")
        if residual is None:
            return float("inf")
        value = float(np.max(residual)) if np.size(residual) else 0.0
        if not np.isfinite(value):
            return float("inf")
        worst = max(worst, value)
    return worst


def solution_scale(problem: cp.Problem) -> float:
    """max(1, ‖x‖∞) sobre las variables del problema; la violación se mide relativa a esta escala."""
    scale = 1.0
    for variable in problem.variables():
        if variable.value is not None:
            scale = max(scale, float(np.max(np.abs(variable.value))))
    return scale
