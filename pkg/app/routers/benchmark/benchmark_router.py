"""
Subcomando benchmark: barrido de reducciones aleatorias.
"""
import argparse
from pathlib import Path

from app.controllers.benchmark.benchmark_controller import BenchmarkController
from app.routers.reduction.reduction_router import run_config_from_args


def register(subparsers: argparse._SubParsersAction) -> None:
    bench_parser = subparsers.add_parser("benchmark", help="Proyección contra pesos optimizados en redes aleatorias")
    bench_parser.add_argument("--instances", type=int, default=20)
    bench_parser.add_argument("--n-min", type=int, default=6, dest="n_min")
    bench_parser.add_argument("--n-max", type=int, default=12, dest="n_max")
    bench_parser.add_argument("--r-min", type=int, default=3, dest="r_min")
    bench_parser.add_argument("--r-max", type=int, default=5, dest="r_max")
    bench_parser.add_argument("--unbalanced", action="store_true")
    bench_parser.add_argument("--seed", type=int, default=0)
    bench_parser.add_argument("--jobs", type=int, default=1)
    bench_parser.add_argument("--out", type=Path)
    bench_parser.add_argument("--delta-hat", type=float, dest="delta_hat")
    bench_parser.add_argument("--tol", type=float)
    bench_parser.add_argument("--max-iter", type=int, dest="max_iter")
    bench_parser.set_defaults(handler=benchmark_command)


def benchmark_command(args: argparse.Namespace) -> int:
    """
    Ejecuta el barrido e imprime una línea por instancia.
    """
    config = run_config_from_args(args)
    rows = BenchmarkController.run(
        args.instances,
        args.seed,
        (args.n_min, args.n_max),
        (args.r_min, args.r_max),
        config,
        args.jobs,
        not args.unbalanced,
        args.out,
    )
    for row in rows:
        print(
            f"{row.instance:3d}  n={row.n:3d}  r={row.r:3d}  "
            f"{row.initial_h2:.6g} → {row.final_h2:.6g}  ({row.improvement_pct:.2f}%)  {row.status}"
        )
    return 0
