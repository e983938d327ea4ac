import numpy as np
import pytest

from app.models.graph.network_model import Clustering
from app.models.optimization.optimization_enums import RunStatus, SolverStatus
from app.models.optimization.optimization_model import SolverOutcome
from app.schemas.config.run_config_schema import RunConfig
from app.services.optimization.weighting_service import EdgeWeightingService
from app.services.pipeline.reduction_pipeline_service import ReductionPipelineService
from app.services.reduction.parameterization_service import mu_from_weights
from app.services.reduction.reduction_service import is_admissible
from app.utils.exceptions import ConfigurationError, SolverError


class ScriptedSolver:
    """Devuelve resultados predefinidos en orden, sin resolver nada."""

    def __init__(self, *outcomes):
        self.outcomes = list(outcomes)
        self.calls = 0

    def solve(self, program):
        self.calls += 1
        return self.outcomes.pop(0)


def _optimal(objective, mu=None):
    values = {} if mu is None else {"mu": np.asarray(mu, dtype=float)}
    return SolverOutcome(status=SolverStatus.OPTIMAL, values=values, objective=objective, solver="fake")


def _failure():
    return SolverOutcome(status=SolverStatus.NUMERICAL_FAILURE, values={}, objective=None, solver="fake")


@pytest.fixture
def mu0(prepared):
    return mu_from_weights(prepared.parameterization, prepared.initial_weights)


def test_solver_failure_keeps_initial_weights(prepared, mu0):
    service = EdgeWeightingService(prepared.data, ScriptedSolver(_optimal(1.0), _failure()))
    w, trace = service.optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.status is RunStatus.SOLVER_FAILED
    assert trace.iterations == 0
    np.testing.assert_allclose(w, prepared.initial_weights)


def test_small_change_converges(prepared, mu0):
    solver = ScriptedSolver(_optimal(1.0), _optimal(0.9, mu0), _optimal(0.9 - 1e-7, mu0))
    w, trace = EdgeWeightingService(prepared.data, solver).optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.status is RunStatus.CONVERGED
    assert trace.iterations == 2
    np.testing.assert_allclose(trace.objectives, [1.0, 0.9, 0.9 - 1e-7])
    # sin mejora del error H2 exacto se conserva el iterado inicial
    assert trace.best == 0
    np.testing.assert_allclose(w, prepared.initial_weights)


def test_increasing_objective_is_rejected(prepared, mu0):
    solver = ScriptedSolver(_optimal(1.0), _optimal(1.5, mu0 + 0.1))
    w, trace = EdgeWeightingService(prepared.data, solver).optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.status is RunStatus.STALLED
    assert trace.iterations == 0
    np.testing.assert_allclose(w, prepared.initial_weights)


def test_step_to_nonpositive_weights_is_rejected(prepared, mu0):
    # μ = (1, 2) da ŵ₃ = μ₁ − μ₂ < 0
    solver = ScriptedSolver(_optimal(1.0), _optimal(0.5, [1.0, 2.0]))
    w, trace = EdgeWeightingService(prepared.data, solver).optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.status is RunStatus.STALLED
    assert np.all(w > 0)


def test_max_iter_returns_best_iterate(prepared, mu0):
    mu1 = np.array([2.5, 1.0])
    solver = ScriptedSolver(_optimal(1.0), _optimal(0.8, mu1))
    service = EdgeWeightingService(prepared.data, solver)
    w, trace = service.optimize_weights(mu0, tol=1e-5, max_iter=1)

    assert trace.status is RunStatus.MAX_ITER
    assert trace.iterations == 1
    w1 = prepared.parameterization.lift @ mu1
    expected = w1 if service.oracle(w1) < service.oracle(prepared.initial_weights) else prepared.initial_weights
    np.testing.assert_allclose(w, expected)
    assert trace.final_error == pytest.approx(min(trace.h2_errors))


def test_initial_bound_failure_raises(prepared, mu0):
    service = EdgeWeightingService(prepared.data, ScriptedSolver(_failure()))
    with pytest.raises(SolverError):
        service.optimize_weights(mu0)


def test_initial_weights_below_minimum_are_rejected(prepared, mu0):
    service = EdgeWeightingService(prepared.data, ScriptedSolver())
    with pytest.raises(ConfigurationError):
        service.optimize_weights(mu0, w_min=1.5)


def test_single_cluster_has_nothing_to_optimize(formation):
    solver = ScriptedSolver(_optimal(0.3))
    prepared = ReductionPipelineService(solver).prepare(formation, Clustering(labels=np.zeros(6, dtype=int), r=1))
    w, trace = EdgeWeightingService(prepared.data, solver).optimize_weights(np.zeros(0))
    assert w.size == 0
    assert trace.status is RunStatus.CONVERGED
    assert trace.iterations == 0
    assert solver.calls == 1


@pytest.mark.sdp
def test_short_run_on_formation(formation, formation_clusters, solver):
    result = ReductionPipelineService(solver).run(formation, formation_clusters, RunConfig(max_iter=5))
    trace = result.trace

    assert trace.status in {RunStatus.CONVERGED, RunStatus.MAX_ITER, RunStatus.STALLED}
    assert trace.iterations <= 5
    objectives = trace.objectives
    assert np.all(np.diff(objectives) <= 1e-7 * np.maximum(1.0, np.abs(objectives[:-1])))
    assert trace.final_error <= trace.initial_error
    assert is_admissible(result.quotient, result.weights)
    # la cota nunca queda por debajo del error exacto
    assert np.all(objectives >= trace.h2_errors ** 2 * (1 - 1e-4) - 1e-7)


@pytest.mark.sdp
@pytest.mark.slow
def test_full_run_improves_projection(formation, formation_clusters, solver):
    config = RunConfig(delta_hat=1e-5, tol=1e-5, max_iter=200)
    result = ReductionPipelineService(solver).run(formation, formation_clusters, config)
    trace = result.trace
    assert trace.status is not RunStatus.SOLVER_FAILED
    assert trace.final_error < trace.initial_error
    assert result.trace.improvement > 0


def test_increase_within_solver_noise_is_accepted(prepared, mu0):
    # sin atributo tol la holgura es ACCEPT_TOL_FACTOR · SOLVER_TOL = 1e-7
    solver = ScriptedSolver(_optimal(1.0), _optimal(1.0 + 5e-8, mu0))
    _, trace = EdgeWeightingService(prepared.data, solver).optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.status is RunStatus.CONVERGED
    assert trace.iterations == 1


def test_acceptance_slack_follows_solver_tolerance(prepared, mu0):
    solver = ScriptedSolver(_optimal(1.0), _optimal(1.005, mu0), _optimal(1.005, mu0))
    solver.tol = 1e-3
    _, trace = EdgeWeightingService(prepared.data, solver).optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.iterations == 2

    strict = ScriptedSolver(_optimal(1.0), _optimal(1.005, mu0))
    strict.tol = 1e-8
    _, trace = EdgeWeightingService(prepared.data, strict).optimize_weights(mu0, tol=1e-5, max_iter=10)
    assert trace.status is RunStatus.STALLED
    assert trace.iterations == 0


@pytest.mark.sdp
def test_identity_clustering_run_keeps_zero_error(formation, solver):
    result = ReductionPipelineService(solver).run(formation, Clustering.identity(6), RunConfig(max_iter=5))
    assert result.trace.status is not RunStatus.SOLVER_FAILED
    assert result.trace.final_error <= 1e-8
