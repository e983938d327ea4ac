"""
Controller para la generación de redes.
Capa delgada que delega al servicio de generación.
"""
from pathlib import Path
from typing import Optional

from app.models.graph.network_model import Clustering, DirectedNetwork
from app.services.graph.generator_service import NetworkGenerationService


class NetworkController:
    """
    Controller para el comando gen.
    """

    @staticmethod
    def generate(
        preset: str,
        out_path: Path,
        n: int,
        r: Optional[int],
        balanced: bool,
        undirected: bool,
        seed: Optional[int],
        clusters_path: Optional[Path],
    ) -> tuple[DirectedNetwork, Optional[Clustering]]:
        """Generar una red y (opcionalmente) su partición"""
        service = NetworkGenerationService()
        return service.generate_files(preset, out_path, n, r, balanced, undirected, seed, clusters_path)
