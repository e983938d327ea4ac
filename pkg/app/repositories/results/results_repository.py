"""
Repositorio de resultados: modelo reducido, masas, traza CSV y barridos.
"""
import csv
import logging
from pathlib import Path

from app.models.optimization.optimization_model import IterationTrace
from app.repositories.network.network_repository import write_json
from app.schemas.reduction.reduction_schema import BenchmarkRow, MassesFile, ReducedModelFile
from app.utils.matrices import significant

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["iter", "objective_trR", "h2_error", "subproblem_status", "elapsed_ms"]


class ResultsRepository:
    """
    Repositorio para los archivos producidos por la CLI.
    """

    def save_reduced_model(self, model: ReducedModelFile, path: Path) -> None:
        write_json(path, model)

    def save_masses(self, masses: MassesFile, path: Path) -> None:
        write_json(path, masses)

    def save_trace(self, trace: IterationTrace, path: Path) -> None:
        """Una fila por iteración: iter, tr(R), error H2, estado, ms y μ."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        m_bar = trace.records[0].mu.size if trace.records else 0
        header = TRACE_COLUMNS + [f"mu_{i + 1}" for i in range(m_bar)]
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            for record in trace.records:
                writer.writerow(
                    [
                        record.iteration,
                        f"{significant(record.objective)!r}",
                        f"{significant(record.h2_error)!r}",
                        record.status.value,
                        f"{record.elapsed_ms:.3f}",
                    ]
                    + [f"{significant(v)!r}" for v in record.mu]
                )
        logger.info(f"Traza escrita: {path} ({len(trace.records)} filas)")

    def load_trace(self, path: Path) -> list[dict]:
        with Path(path).open(newline="", encoding="utf-8") as handle:
            return list(csv.DictReader(handle))

    def save_benchmark(self, rows: list[BenchmarkRow], path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fields = list(BenchmarkRow.model_fields)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=fields)
            writer.writeheader()
            for row in rows:
                writer.writerow(row.model_dump(mode="json"))
        logger.info(f"Barrido escrito: {path} ({len(rows)} instancias)")
