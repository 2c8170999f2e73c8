"""
File: corpus_repository.py
Description: File-system implementation of the topology repository
Author: RingDiag Team
Created: 2025-06-08
"""

import asyncio
import logging
from pathlib import Path
from typing import List, Union

from src.core.domain.entities import Topology
from src.core.domain.exceptions import (
    TopologySourceException,
    UnsupportedTopologyFormatException,
)
from src.core.ports.repositories import ITopologyRepository

from .edge_list_loader import load_edge_list
from .graphml_loader import load_graphml

logger = logging.getLogger(__name__)

GRAPHML_SUFFIXES = {".graphml", ".xml"}
EDGE_LIST_SUFFIXES = {".edges", ".edgelist", ".txt"}


def load_topology_file(path: Union[str, Path]) -> Topology:
    """Load a GraphML or edge-list file, chosen by suffix."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in GRAPHML_SUFFIXES | EDGE_LIST_SUFFIXES:
        raise UnsupportedTopologyFormatException(
            f"Unknown topology file type '{suffix}'", str(path)
        )
    try:
        data = path.read_bytes()
    except OSError as e:
        raise TopologySourceException(f"Cannot read {path}: {str(e)}", str(path))

    if suffix in GRAPHML_SUFFIXES:
        return load_graphml(data, source=str(path), fallback_name=path.stem)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise TopologySourceException(f"{path} is not UTF-8: {str(e)}", str(path))
    return load_edge_list(text, name=path.stem, source=str(path))


class FileSystemTopologyRepository(ITopologyRepository):
    """Topologies stored as files in one corpus directory."""

    def __init__(self, corpus_dir: Union[str, Path]):
        self.corpus_dir = Path(corpus_dir)

    async def list_names(self) -> List[str]:
        if not self.corpus_dir.is_dir():
            raise TopologySourceException(
                f"Corpus directory {self.corpus_dir} does not exist", str(self.corpus_dir)
            )
        suffixes = GRAPHML_SUFFIXES | EDGE_LIST_SUFFIXES
        names = sorted(
            p.name
            for p in self.corpus_dir.iterdir()
            if p.is_file() and p.suffix.lower() in suffixes
        )
        logger.info(f"Found {len(names)} topology files in {self.corpus_dir}")
        return names

    async def load(self, name: str) -> Topology:
        path = self.corpus_dir / name
        if not path.is_file():
            raise TopologySourceException(f"No topology file {name}", str(path))
        return await asyncio.to_thread(load_topology_file, path)
