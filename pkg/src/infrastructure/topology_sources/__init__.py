"""
File: __init__.py
Description: Topology sources (GraphML, edge lists, corpus directories)
Author: RingDiag Team
Created: 2025-06-08
"""

from .corpus_repository import FileSystemTopologyRepository, load_topology_file
from .edge_list_loader import load_edge_list
from .graphml_loader import load_graphml

__all__ = [
    "FileSystemTopologyRepository",
    "load_topology_file",
    "load_edge_list",
    "load_graphml",
]
