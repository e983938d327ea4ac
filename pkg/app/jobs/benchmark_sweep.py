"""
Barrido de instancias aleatorias: pesos de proyección contra pesos optimizados.

Cada instancia es una red balanceada aleatoria con una partición aleatoria;
la semilla de la instancia k es (seed, k), de modo que el resultado no
depende del número de procesos.

Ejemplo:
python -m app.jobs.benchmark_sweep --instances 20 --seed 0 --jobs 4 --out bench.csv
"""
import argparse
import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from app.dependencies.solver_dependencies import get_conic_solver
from app.repositories.results.results_repository import ResultsRepository
from app.schemas.config.run_config_schema import RunConfig
from app.schemas.reduction.reduction_schema import BenchmarkRow
from app.services.graph.generator_service import random_clustering, random_network
from app.services.pipeline.reduction_pipeline_service import ReductionPipelineService
from app.utils.exceptions import NetworkReductionError
from app.utils.matrices import significant

logger = logging.getLogger(__name__)


def run_instance(
    index: int,
    seed: int,
    n_range: tuple[int, int],
    r_range: tuple[int, int],
    config: RunConfig,
    balanced: bool = True,
) -> BenchmarkRow:
    """Genera, reduce y optimiza una instancia."""
    rng = np.random.default_rng([seed, index])
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    r = int(rng.integers(min(r_range[0], n), min(r_range[1], n) + 1))
    net = random_network(rng, n, balanced=balanced)
    clustering = random_clustering(rng, n, r)

    service = ReductionPipelineService(get_conic_solver(config.solver_tol))
    try:
        result = service.run(net, clustering, config)
    except NetworkReductionError as e:
        logger.error(f"Instancia {index} (n={n}, r={r}): {e}")
        return BenchmarkRow(
            instance=index, n=n, r=r,
            initial_h2=float("nan"), final_h2=float("nan"), improvement_pct=float("nan"),
            iterations=0, status="error", error=str(e),
        )

    trace = result.trace
    logger.info(
        f"Instancia {index} (n={n}, r={r}): {trace.initial_error:.6g} → {trace.final_error:.6g}"
    )
    return BenchmarkRow(
        instance=index,
        n=n,
        r=r,
        initial_h2=significant(trace.initial_error),
        final_h2=significant(trace.final_error),
        improvement_pct=significant(100.0 * trace.improvement),
        iterations=trace.iterations,
        status=trace.status.value,
    )


async def run_benchmark(
    n_instances: int,
    seed: int,
    n_range: tuple[int, int],
    r_range: tuple[int, int],
    config: RunConfig,
    jobs: int = 1,
    balanced: bool = True,
) -> list[BenchmarkRow]:
    """
    Ejecuta las instancias, en paralelo si `jobs > 1`.
    Cada proceso crea su propia sesión de solver.
    """
    logger.info(f"Iniciando barrido de {n_instances} instancias (semilla {seed}, {jobs} proceso(s))...")
    args = [(k, seed, n_range, r_range, config, balanced) for k in range(n_instances)]

    if jobs <= 1:
        rows = [run_instance(*a) for a in args]
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = await asyncio.gather(*(loop.run_in_executor(pool, run_instance, *a) for a in args))

    failed = sum(1 for row in rows if row.status == "error")
    logger.info(f"Barrido completado: {n_instances - failed} instancias resueltas, {failed} con error")
    return sorted(rows, key=lambda row: row.instance)


async def main():
    """
    Función principal para ejecutar el barrido directamente.
    """
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    parser = argparse.ArgumentParser(description="Barrido de reducciones aleatorias")
    parser.add_argument("--instances", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-min", type=int, default=6)
    parser.add_argument("--n-max", type=int, default=12)
    parser.add_argument("--r-min", type=int, default=3)
    parser.add_argument("--r-max", type=int, default=5)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("benchmark.csv"))
    args = parser.parse_args()

    rows = await run_benchmark(
        args.instances, args.seed, (args.n_min, args.n_max), (args.r_min, args.r_max),
        RunConfig(), args.jobs,
    )
    ResultsRepository().save_benchmark(rows, args.out)


if __name__ == "__main__":
    asyncio.run(main())
