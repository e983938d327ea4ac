import argparse
import logging
import sys
from typing import Optional, Sequence

from app.config.settings import settings
from app.middleware.logging_middleware import LoggingMiddleware
from app.routers.benchmark import benchmark_router
from app.routers.network import network_router
from app.routers.reduction import reduction_router
from app.utils.exceptions import NetworkReductionError

logger = logging.getLogger("app")


def build_parser() -> argparse.ArgumentParser:
    """
    Construye el parser con todos los subcomandos.
    """
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Reducción estructural de redes difusivas con pesos H2-óptimos",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Incluir routers
    network_router.register(subparsers)
    reduction_router.register(subparsers)
    benchmark_router.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Punto de entrada de la CLI.
    Devuelve el código de salida documentado en app.utils.exceptions.
    """
    # Configurar logging
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    args = build_parser().parse_args(argv)
    middleware = LoggingMiddleware()
    try:
        return middleware.dispatch(args, args.handler)
    except NetworkReductionError as e:
        print(f"Error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception("Error inesperado")
        print(f"Error inesperado: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
