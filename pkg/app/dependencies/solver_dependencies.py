from app.config.settings import settings
from app.services.optimization.conic_solver import CvxpyConicSolver


def get_conic_solver(tol: float | None = None) -> CvxpyConicSolver:
    """
    Dependency para obtener el solver cónico configurado.
    Usa SOLVER / SOLVER_FALLBACK / SOLVER_TOL / SOLVER_CHECK_TOL de la configuración.
    """
    return CvxpyConicSolver(
        solver=settings.SOLVER,
        fallback=settings.SOLVER_FALLBACK or None,
        tol=settings.SOLVER_TOL if tol is None else tol,
        check_tol=settings.SOLVER_CHECK_TOL,
        verbose=settings.DEBUG,
    )
