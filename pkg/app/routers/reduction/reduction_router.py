"""
Subcomandos de reducción: reduce, evaluate, balance y project.
"""
import argparse
import json
from pathlib import Path

from pydantic import ValidationError

from app.controllers.reduction.reduction_controller import ReductionController
from app.models.optimization.optimization_enums import InitStrategy
from app.schemas.config.run_config_schema import RunConfig
from app.utils.exceptions import ConfigurationError


def register(subparsers: argparse._SubParsersAction) -> None:
    reduce_parser = subparsers.add_parser("reduce", help="Reducir la red y optimizar los pesos del cociente")
    reduce_parser.add_argument("--graph", type=Path, required=True)
    reduce_parser.add_argument("--clusters", type=Path, required=True)
    reduce_parser.add_argument("--out", type=Path)
    reduce_parser.add_argument("--trace", type=Path)
    reduce_parser.add_argument("--delta-hat", type=float, dest="delta_hat")
    reduce_parser.add_argument("--tol", type=float)
    reduce_parser.add_argument("--max-iter", type=int, dest="max_iter")
    reduce_parser.add_argument("--w-min", type=float, dest="w_min")
    reduce_parser.add_argument("--eps-psd", type=float, dest="eps_psd")
    reduce_parser.add_argument("--solver-tol", type=float, dest="solver_tol")
    reduce_parser.add_argument(
        "--init", choices=[s.value for s in InitStrategy], default=InitStrategy.PROJECTION.value
    )
    reduce_parser.add_argument(
        "--keep-descending",
        action="store_true",
        default=None,
        help="Seguir iterando mientras el error H2 exacto siga bajando",
    )
    reduce_parser.set_defaults(handler=reduce_command)

    evaluate_parser = subparsers.add_parser("evaluate", help="Error H2 de pesos reducidos dados")
    evaluate_parser.add_argument("--graph", type=Path, required=True)
    evaluate_parser.add_argument("--clusters", type=Path, required=True)
    evaluate_parser.add_argument("--weights", type=Path, required=True)
    evaluate_parser.set_defaults(handler=evaluate_command)

    balance_parser = subparsers.add_parser("balance", help="Masas de balanceo del grafo")
    balance_parser.add_argument("--graph", type=Path, required=True)
    balance_parser.add_argument("--out", type=Path)
    balance_parser.set_defaults(handler=balance_command)

    project_parser = subparsers.add_parser("project", help="Pesos iniciales de proyección")
    project_parser.add_argument("--graph", type=Path, required=True)
    project_parser.add_argument("--clusters", type=Path, required=True)
    project_parser.add_argument("--out", type=Path)
    project_parser.set_defaults(handler=project_command)


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig con los valores de `settings` y los flags dados."""
    fields = ("delta_hat", "tol", "max_iter", "w_min", "eps_psd", "solver_tol", "keep_descending", "init")
    overrides = {f: getattr(args, f) for f in fields if getattr(args, f, None) is not None}
    try:
        return RunConfig(**overrides)
    except ValidationError as e:
        raise ConfigurationError(f"Parámetros inválidos: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}")


def reduce_command(args: argparse.Namespace) -> int:
    """
    Reduce la red según la partición y optimiza los pesos.

    Escribe el modelo reducido (--out) y la traza (--trace) e imprime el resumen.
    """
    config = run_config_from_args(args)
    summary = ReductionController.reduce(args.graph, args.clusters, config, args.out, args.trace)
    print(summary.model_dump_json(indent=2))
    return 0


def evaluate_command(args: argparse.Namespace) -> int:
    """
    Evalúa el error H2 de un juego de pesos admisibles.
    """
    report = ReductionController.evaluate(args.graph, args.clusters, args.weights)
    print(report.model_dump_json(indent=2))
    return 0


def balance_command(args: argparse.Namespace) -> int:
    """
    Calcula las masas que balancean el grafo (todas 1 si ya es balanceado).
    """
    masses = ReductionController.balance(args.graph, args.out)
    print(masses.model_dump_json(indent=2))
    return 0


def project_command(args: argparse.Namespace) -> int:
    """
    Calcula los pesos de proyección ŵ⁽⁰⁾ con sus aristas (cola → cabeza).
    """
    arcs = ReductionController.project(args.graph, args.clusters, args.out)
    print(json.dumps([arc.model_dump() for arc in arcs], indent=2))
    return 0
