"""
Repositorio de archivos de entrada: grafo, clusters y pesos reducidos.
Convierte entre índices desde 1 (archivos) y desde 0 (memoria).
"""
import logging
from pathlib import Path
from typing import Type, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from app.models.graph.network_model import Clustering, DirectedNetwork, Edge
from app.schemas.network.network_schema import (
    ClusteringFile,
    EdgeEntry,
    GraphFile,
    InputEntry,
    OutputEntry,
    WeightsFile,
)
from app.services.graph.graph_service import from_undirected
from app.utils.exceptions import ParseError
from app.utils.matrices import significant

logger = logging.getLogger(__name__)

SchemaT = TypeVar("SchemaT", bound=BaseModel)


def read_json(path: Path, schema: Type[SchemaT]) -> SchemaT:
    """
    Lee y valida un archivo JSON.

    Raises:
        ParseError: si el archivo no existe o no cumple el schema
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"No se pudo leer '{path}': {e.strerror or e}")
    try:
        return schema.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"Archivo '{path}' inválido: {e.error_count()} error(es): {e.errors()[0]['msg']}")


def write_json(path: Path, model: BaseModel) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"Archivo escrito: {path}")


class NetworkRepository:
    """
    Repositorio para grafos y particiones.
    """

    def load_graph(self, path: Path) -> DirectedNetwork:
        """Leer un grafo; con `undirected: true` cada arista da dos arcos."""
        data = read_json(path, GraphFile)
        p = max(i.channel for i in data.inputs)
        q = max(o.channel for o in data.outputs)
        F = np.zeros((data.n, p))
        for i in data.inputs:
            F[i.vertex - 1, i.channel - 1] += i.gain
        H = np.zeros((q, data.n))
        for o in data.outputs:
            H[o.channel - 1, o.vertex - 1] += o.gain

        arcs = [(e.tail - 1, e.head - 1, e.weight) for e in data.edges]
        if data.undirected:
            return from_undirected(data.n, arcs, F, H)
        return DirectedNetwork(n=data.n, edges=tuple(Edge(*a) for a in arcs), input_map=F, output_map=H)

    def save_graph(self, net: DirectedNetwork, path: Path) -> None:
        """Guardar un grafo (siempre como arcos dirigidos)."""
        F, H = net.input_map, net.output_map
        model = GraphFile(
            n=net.n,
            edges=[EdgeEntry(tail=e.tail + 1, head=e.head + 1, weight=significant(e.weight)) for e in net.edges],
            inputs=[
                InputEntry(vertex=v + 1, channel=c + 1, gain=significant(F[v, c]))
                for v, c in zip(*np.nonzero(F))
            ],
            outputs=[
                OutputEntry(channel=c + 1, vertex=v + 1, gain=significant(H[c, v]))
                for c, v in zip(*np.nonzero(H))
            ],
        )
        write_json(path, model)

    def load_clustering(self, path: Path, n: int) -> Clustering:
        """Leer la partición; cada vértice debe aparecer exactamente una vez."""
        groups = read_json(path, ClusteringFile).root
        return Clustering.from_groups([[v - 1 for v in group] for group in groups], n=n)

    def save_clustering(self, clustering: Clustering, path: Path) -> None:
        groups = [[v + 1 for v in group] for group in clustering.groups()]
        write_json(path, ClusteringFile(groups))


class WeightsRepository:
    """
    Repositorio para pesos del cociente.
    """

    def load_weights(self, path: Path, edge_map) -> np.ndarray:
        """
        Leer pesos y ordenarlos según las aristas del cociente.

        Raises:
            ParseError: si faltan aristas, sobran, se repiten o hay pesos no finitos
        """
        entries = read_json(path, WeightsFile).root
        index = {pair: k for k, pair in enumerate(edge_map)}
        weights = np.zeros(len(edge_map))
        seen: set[int] = set()
        for tail, head, weight in entries:
            key = (tail - 1, head - 1)
            if key not in index:
                raise ParseError(f"La arista ({tail} → {head}) no pertenece al grafo cociente.")
            if index[key] in seen:
                raise ParseError(f"Arista repetida ({tail} → {head}) en el archivo de pesos.")
            seen.add(index[key])
            weights[index[key]] = weight
        missing = [f"({t + 1} → {h + 1})" for k, (t, h) in enumerate(edge_map) if k not in seen]
        if missing:
            raise ParseError(f"Faltan pesos para las aristas {', '.join(missing)}.")
        return weights

    def save_weights(self, edge_map, weights, path: Path) -> None:
        entries = [
            (tail + 1, head + 1, significant(w))
            for (tail, head), w in zip(edge_map, weights)
        ]
        write_json(path, WeightsFile(entries))
