"""
Subcomando gen: redes de prueba.
"""
import argparse
from pathlib import Path

from app.controllers.network.network_controller import NetworkController
from app.services.graph.generator_service import FORMATION_PRESETS


def register(subparsers: argparse._SubParsersAction) -> None:
    gen_parser = subparsers.add_parser("gen", help="Generar una red de prueba")
    gen_parser.add_argument("--preset", choices=[*FORMATION_PRESETS, "random"], default="paper6")
    gen_parser.add_argument("--out", type=Path, required=True)
    gen_parser.add_argument("--clusters-out", type=Path, dest="clusters_out")
    gen_parser.add_argument("--n", type=int, default=8)
    gen_parser.add_argument("--r", type=int)
    balance_group = gen_parser.add_mutually_exclusive_group()
    balance_group.add_argument("--balanced", dest="balanced", action="store_true")
    balance_group.add_argument("--unbalanced", dest="balanced", action="store_false")
    gen_parser.add_argument("--undirected", action="store_true")
    gen_parser.add_argument("--seed", type=int, default=0)
    gen_parser.set_defaults(handler=gen_command, balanced=False)


def gen_command(args: argparse.Namespace) -> int:
    """
    Genera una red (preset paper6 o random) y la escribe en --out.

    Con --clusters-out también escribe la partición (la del preset o una
    aleatoria con --r clusters).
    """
    net, clustering = NetworkController.generate(
        args.preset, args.out, args.n, args.r, args.balanced, args.undirected, args.seed, args.clusters_out
    )
    clusters = f", r={clustering.r}" if clustering is not None else ""
    print(f"Red generada: n={net.n}, m={net.m}{clusters} → {args.out}")
    return 0
