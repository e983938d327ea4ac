"""
Controller para la reducción de redes.
Capa delgada que delega al servicio de reducción.
"""
from pathlib import Path
from typing import List, Optional

from app.dependencies.solver_dependencies import get_conic_solver
from app.schemas.config.run_config_schema import RunConfig
from app.schemas.reduction.reduction_schema import EvaluationReport, MassesFile, RunSummary, WeightedArc
from app.services.pipeline.reduction_pipeline_service import ReductionPipelineService


class ReductionController:
    """
    Controller para los comandos reduce, evaluate, balance y project.
    """

    @staticmethod
    def reduce(
        graph_path: Path,
        clusters_path: Path,
        config: RunConfig,
        out_path: Optional[Path],
        trace_path: Optional[Path],
    ) -> RunSummary:
        """Reducir y optimizar los pesos del cociente"""
        service = ReductionPipelineService(get_conic_solver(config.solver_tol))
        return service.reduce_files(graph_path, clusters_path, config, out_path, trace_path)

    @staticmethod
    def evaluate(graph_path: Path, clusters_path: Path, weights_path: Path) -> EvaluationReport:
        """Evaluar el error H2 de pesos dados"""
        service = ReductionPipelineService(get_conic_solver())
        return service.evaluate_files(graph_path, clusters_path, weights_path)

    @staticmethod
    def balance(graph_path: Path, out_path: Optional[Path]) -> MassesFile:
        """Calcular las masas de balanceo"""
        service = ReductionPipelineService(get_conic_solver())
        return service.balance_files(graph_path, out_path)

    @staticmethod
    def project(graph_path: Path, clusters_path: Path, out_path: Optional[Path]) -> List[WeightedArc]:
        """Calcular los pesos iniciales de proyección"""
        service = ReductionPipelineService(get_conic_solver())
        return service.project_files(graph_path, clusters_path, out_path)
