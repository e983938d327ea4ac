"""
Servicio de reducción de extremo a extremo.
Encadena balanceo, cociente, parametrización, pesos iniciales y
optimización, y arma los archivos de salida.
"""
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from app.models.graph.network_model import Clustering, DirectedNetwork
from app.models.optimization.optimization_enums import InitStrategy
from app.models.optimization.optimization_model import ReductionData, ReductionResult
from app.models.reduction.reduction_model import BalancedRepresentation, QuotientModel, WeightParameterization
from app.repositories.network.network_repository import NetworkRepository, WeightsRepository
from app.repositories.results.results_repository import ResultsRepository
from app.schemas.config.run_config_schema import RunConfig
from app.schemas.reduction.reduction_schema import (
    EvaluationReport,
    MassesFile,
    ReducedModelFile,
    RunSummary,
    WeightedArc,
)
from app.services.analysis.h2_service import consensus_check, error_realization, is_hurwitz, reduction_error
from app.services.balancing.balancing_service import balanced_incidence, balanced_representation
from app.services.graph.graph_service import is_balanced
from app.services.optimization.lmi_service import build_reduction_data
from app.services.optimization.weighting_service import EdgeWeightingService
from app.services.reduction.parameterization_service import mu_from_weights, parameterize
from app.services.reduction.reduction_service import (
    cycle_cover_weights,
    is_admissible,
    projection_initial_weights,
    quotient,
    reduced_graph_edges,
    reduced_system,
)
from app.utils.exceptions import AdmissibilityError
from app.utils.matrices import significant, significant_list

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PreparedReduction:
    """Todo lo que se calcula antes de optimizar."""
    network: DirectedNetwork
    rep: BalancedRepresentation
    quotient: QuotientModel
    parameterization: WeightParameterization
    data: ReductionData
    initial_weights: np.ndarray


class ReductionPipelineService:
    """
    Servicio de reducción.
    Las operaciones en memoria (`prepare`, `run`, `evaluate`) no tocan
    archivos; las variantes `*_files` leen y escriben con los repositorios.
    """

    def __init__(self, solver):
        self.solver = solver
        self.network_repo = NetworkRepository()
        self.weights_repo = WeightsRepository()
        self.results_repo = ResultsRepository()

    def prepare(
        self,
        net: DirectedNetwork,
        clustering: Clustering,
        init: InitStrategy = InitStrategy.PROJECTION,
    ) -> PreparedReduction:
        """Balanceo, cociente, parametrización y pesos iniciales."""
        rep = balanced_representation(net)
        q = quotient(balanced_incidence(net, rep), clustering, rep, net.output_map)
        p = parameterize(q)
        if init is InitStrategy.CYCLES:
            w0 = cycle_cover_weights(q)
        else:
            w0 = projection_initial_weights(rep.L_b, clustering, q)
        data = build_reduction_data(rep, net.output_map, q, p)
        return PreparedReduction(net, rep, q, p, data, w0)

    def run(self, net: DirectedNetwork, clustering: Clustering, config: RunConfig) -> ReductionResult:
        """Reducción optimizada en memoria."""
        prepared = self.prepare(net, clustering, config.init)
        mu0 = mu_from_weights(prepared.parameterization, prepared.initial_weights)

        weighting_service = EdgeWeightingService(prepared.data, self.solver)
        w_star, trace = weighting_service.optimize_weights(
            mu0,
            delta_hat=config.delta_hat,
            tol=config.tol,
            max_iter=config.max_iter,
            w_min=config.resolve_w_min(prepared.initial_weights),
            keep_descending=config.keep_descending,
            eps_psd=config.eps_psd,
        )

        rs = reduced_system(prepared.quotient, w_star)
        return ReductionResult(
            quotient=prepared.quotient,
            initial_weights=prepared.initial_weights,
            weights=w_star,
            L_hat=rs.L_hat,
            F_hat=rs.F_hat,
            H_hat=rs.H_hat,
            reduced_edges=reduced_graph_edges(rs),
            trace=trace,
        )

    def evaluate(self, net: DirectedNetwork, clustering: Clustering, w_hat) -> EvaluationReport:
        """
        Error H2 de un juego de pesos reducidos.

        Raises:
            AdmissibilityError: si ŵ no es positivo o no balancea el cociente
        """
        rep = balanced_representation(net)
        q = quotient(balanced_incidence(net, rep), clustering, rep, net.output_map)
        w = np.asarray(w_hat, dtype=float)
        if not is_admissible(q, w):
            raise AdmissibilityError(
                f"Pesos no admisibles: residuo de balance {np.max(np.abs(q.B_hat @ w)):.3e}."
                if w.size == q.m_hat and np.all(w > 0)
                else "Pesos no admisibles: deben ser estrictamente positivos."
            )
        realization = error_realization(rep, net.output_map, q, w)
        return EvaluationReport(
            h2_error=significant(reduction_error(rep, net.output_map, q, w)),
            hurwitz=is_hurwitz(realization.A),
            consensus=consensus_check(reduced_system(q, w).L_hat),
            admissible=True,
        )

    # Variantes sobre archivos

    def reduce_files(
        self,
        graph_path: Path,
        clusters_path: Path,
        config: RunConfig,
        out_path: Path | None = None,
        trace_path: Path | None = None,
    ) -> RunSummary:
        net = self.network_repo.load_graph(graph_path)
        clustering = self.network_repo.load_clustering(clusters_path, net.n)
        result = self.run(net, clustering, config)
        summary = self.summarize(result)

        if out_path is not None:
            self.results_repo.save_reduced_model(self.to_file(result, summary), out_path)
        if trace_path is not None:
            self.results_repo.save_trace(result.trace, trace_path)
        return summary

    def evaluate_files(self, graph_path: Path, clusters_path: Path, weights_path: Path) -> EvaluationReport:
        net = self.network_repo.load_graph(graph_path)
        clustering = self.network_repo.load_clustering(clusters_path, net.n)
        rep = balanced_representation(net)
        q = quotient(balanced_incidence(net, rep), clustering, rep, net.output_map)
        weights = self.weights_repo.load_weights(weights_path, q.edge_map)
        return self.evaluate(net, clustering, weights)

    def balance_files(self, graph_path: Path, out_path: Path | None = None) -> MassesFile:
        net = self.network_repo.load_graph(graph_path)
        rep = balanced_representation(net)
        masses = MassesFile(balanced=is_balanced(net), masses=significant_list(rep.masses))
        if out_path is not None:
            self.results_repo.save_masses(masses, out_path)
        return masses

    def project_files(self, graph_path: Path, clusters_path: Path, out_path: Path | None = None) -> list[WeightedArc]:
        net = self.network_repo.load_graph(graph_path)
        clustering = self.network_repo.load_clustering(clusters_path, net.n)
        prepared = self.prepare(net, clustering)
        if out_path is not None:
            self.weights_repo.save_weights(prepared.quotient.edge_map, prepared.initial_weights, out_path)
        return [
            WeightedArc(tail=t + 1, head=h + 1, weight=significant(w))
            for (t, h), w in zip(prepared.quotient.edge_map, prepared.initial_weights)
        ]

    @staticmethod
    def summarize(result: ReductionResult) -> RunSummary:
        trace = result.trace
        return RunSummary(
            initial_h2_error=significant(trace.initial_error),
            final_h2_error=significant(trace.final_error),
            improvement_pct=significant(100.0 * trace.improvement),
            iterations=trace.iterations,
            status=trace.status,
        )

    @staticmethod
    def to_file(result: ReductionResult, summary: RunSummary) -> ReducedModelFile:
        q = result.quotient
        return ReducedModelFile(
            clusters=[[v + 1 for v in group] for group in q.clustering.groups()],
            masses_hat=significant_list(q.masses_hat),
            edges=[
                WeightedArc(tail=t + 1, head=h + 1, weight=significant(w))
                for (t, h), w in zip(q.edge_map, result.weights)
            ],
            initial_weights=significant_list(result.initial_weights),
            L_hat=significant_list(result.L_hat),
            F_hat=significant_list(result.F_hat),
            H_hat=significant_list(result.H_hat),
            reduced_graph=[
                WeightedArc(tail=e.tail + 1, head=e.head + 1, weight=significant(e.weight))
                for e in result.reduced_edges
            ],
            summary=summary,
        )
