import time
import logging
from argparse import Namespace
from typing import Callable

from app.utils.exceptions import NetworkReductionError

# Configurar logger
logger = logging.getLogger("app")


class LoggingMiddleware:
    """
    Middleware para logging de todos los comandos de la CLI.
    """

    def dispatch(self, args: Namespace, call_next: Callable[[Namespace], int]) -> int:
        start_time = time.time()

        # Log command
        logger.info(f"Comando: {args.command}")

        # Process command
        exit_code = 1
        try:
            exit_code = call_next(args)
            return exit_code
        except NetworkReductionError as e:
            exit_code = e.exit_code
            raise
        finally:
            # Calculate duration
            duration = time.time() - start_time

            # Log result
            logger.info(
                f"Fin: {args.command} - Código: {exit_code} - Duración: {duration:.2f}s"
            )
