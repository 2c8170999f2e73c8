"""
File: graphml_loader.py
Description: GraphML (Topology Zoo flavour) topology loader
Author: RingDiag Team
Created: 2025-06-08
"""

import logging
from io import BytesIO
from typing import Dict, List, Optional, Set, Tuple
from xml.etree import ElementTree

import networkx as nx

from src.core.domain.entities import Topology
from src.core.domain.exceptions import (
    EmptyTopologyException,
    TopologyParseException,
    UnsupportedTopologyFormatException,
)

logger = logging.getLogger(__name__)


def load_graphml(
    document: bytes,
    name: Optional[str] = None,
    source: Optional[str] = None,
    fallback_name: str = "graphml",
) -> Topology:
    """Read an undirected GraphML graph into a Topology.

    Switch ids follow node document order. Parallel links are kept, self
    loops are dropped and counted. Edges must only reference declared
    nodes. The name is `name`, else the graph label, else `fallback_name`.
    """
    declared, references = _scan(document, source)
    undeclared = sorted({n for pair in references for n in pair} - declared)
    if undeclared:
        raise TopologyParseException(
            f"Edges reference undeclared nodes: {', '.join(undeclared[:5])}", source
        )

    try:
        graph = nx.read_graphml(BytesIO(document), force_multigraph=True)
    except (nx.NetworkXError, ElementTree.ParseError, ValueError, KeyError) as e:
        raise TopologyParseException(f"Unreadable GraphML: {str(e)}", source)

    if graph.is_directed():
        raise UnsupportedTopologyFormatException(
            "Directed GraphML graphs are not supported", source
        )
    if graph.number_of_nodes() == 0:
        raise EmptyTopologyException("GraphML document declares no nodes", source)

    node_ids: List[str] = [str(node) for node in graph.nodes]
    index: Dict[str, int] = {node: i for i, node in enumerate(node_ids)}
    pairs: List[Tuple[int, int]] = []
    self_loops = 0
    for u, v, _ in graph.edges(keys=True):
        if u == v:
            self_loops += 1
            continue
        pairs.append((index[str(u)], index[str(v)]))

    label = graph.graph.get("label") or graph.graph.get("Network")
    topology_name = name or (str(label) if label else fallback_name)
    if self_loops:
        logger.warning(f"Dropped {self_loops} self-loop(s) from {topology_name}")

    return Topology.from_edge_pairs(
        num_switches=len(node_ids), pairs=pairs, name=topology_name, labels=node_ids
    )


def _scan(document: bytes, source: Optional[str]) -> Tuple[Set[str], List[Tuple[str, str]]]:
    """Declared node ids and edge endpoints of the first graph element."""
    try:
        root = ElementTree.fromstring(document)
    except ElementTree.ParseError as e:
        raise TopologyParseException(f"Malformed GraphML: {str(e)}", source)

    graph = next((el for el in root.iter() if _local(el.tag) == "graph"), None)
    if graph is None:
        raise TopologyParseException("GraphML document has no graph element", source)

    declared: Set[str] = set()
    references: List[Tuple[str, str]] = []
    for element in graph:
        tag = _local(element.tag)
        if tag == "node":
            declared.add(element.get("id", ""))
        elif tag == "edge":
            references.append((element.get("source", ""), element.get("target", "")))
    return declared, references


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]
