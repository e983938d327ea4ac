"""
Controller para el barrido de instancias aleatorias.
"""
import asyncio
from pathlib import Path
from typing import List, Optional

from app.jobs.benchmark_sweep import run_benchmark
from app.repositories.results.results_repository import ResultsRepository
from app.schemas.config.run_config_schema import RunConfig
from app.schemas.reduction.reduction_schema import BenchmarkRow


class BenchmarkController:
    """
    Controller para el comando benchmark.
    """

    @staticmethod
    def run(
        n_instances: int,
        seed: int,
        n_range: tuple[int, int],
        r_range: tuple[int, int],
        config: RunConfig,
        jobs: int,
        balanced: bool,
        out_path: Optional[Path],
    ) -> List[BenchmarkRow]:
        """Ejecutar el barrido y guardar el CSV"""
        rows = asyncio.run(run_benchmark(n_instances, seed, n_range, r_range, config, jobs, balanced))
        if out_path is not None:
            ResultsRepository().save_benchmark(rows, out_path)
        return rows
