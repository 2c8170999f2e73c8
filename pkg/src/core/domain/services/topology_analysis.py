"""
File: topology_analysis.py
Description: Connectivity, bridges and the static-rule lower bound of a topology
Author: RingDiag Team
Created: 2025-06-02
"""

import logging
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from ..entities.topology import Topology
from ..exceptions.base import PreconditionException
from ..value_objects import Arc, Edge, EdgeId, SwitchId

logger = logging.getLogger(__name__)


class TopologyPreconditionException(PreconditionException):
    """Exception raised when an analysis needs a connected topology."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message, requirement="connected")


def is_connected(topology: Topology) -> bool:
    """True iff every switch is reachable from switch 0."""
    if topology.num_switches <= 1:
        return True
    return nx.is_connected(topology.simple_graph())


def find_bridges(topology: Topology) -> Set[EdgeId]:
    """Edges whose removal disconnects the topology.

    One iterative depth-first pass with low-link values. Only the edge id
    used to enter a switch is skipped, so a parallel link back to the parent
    counts as a back edge and is never a bridge.
    """
    require_connected(topology, "find_bridges")

    discovery: List[int] = [-1] * topology.num_switches
    low: List[int] = [0] * topology.num_switches
    bridges: Set[EdgeId] = set()
    timer = 0

    for root in topology.switches:
        if discovery[root] != -1:
            continue
        discovery[root] = low[root] = timer
        timer += 1
        stack: List[Tuple[SwitchId, Optional[EdgeId], Iterator[Edge]]] = [
            (root, None, iter(topology.incident(root)))
        ]
        while stack:
            node, via, pending = stack[-1]
            descended = False
            for edge in pending:
                if edge.id == via:
                    continue
                neighbour = edge.other(node)
                if discovery[neighbour] == -1:
                    discovery[neighbour] = low[neighbour] = timer
                    timer += 1
                    stack.append(
                        (neighbour, edge.id, iter(topology.incident(neighbour)))
                    )
                    descended = True
                    break
                low[node] = min(low[node], discovery[neighbour])
            if descended:
                continue
            stack.pop()
            if stack and via is not None:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[node])
                if low[node] > discovery[parent]:
                    bridges.add(via)

    return bridges


def rule_lower_bound(topology: Topology) -> int:
    """|E| + |B|: bridges must be crossed in both directions."""
    return topology.num_edges + len(find_bridges(topology))


def directed_arcs(topology: Topology) -> List[Arc]:
    """Both orientations of every edge, in edge order."""
    return [arc for edge in topology.edges for arc in edge.arcs()]


def odd_vertices(topology: Topology) -> List[SwitchId]:
    return [s for s in topology.switches if topology.degree(s) % 2 == 1]


def is_eulerian(topology: Topology) -> bool:
    """Connected with every degree even."""
    return is_connected(topology) and not odd_vertices(topology)


def topology_summary(topology: Topology) -> Dict[str, Any]:
    """JSON-ready summary; bridge figures are null for disconnected inputs."""
    connected = is_connected(topology)
    bridges = find_bridges(topology) if connected else None
    return {
        "name": topology.name,
        "num_switches": topology.num_switches,
        "num_edges": topology.num_edges,
        "connected": connected,
        "num_bridges": len(bridges) if bridges is not None else None,
        "lower_bound": (
            topology.num_edges + len(bridges) if bridges is not None else None
        ),
    }


def require_connected(topology: Topology, operation: str) -> None:
    if not is_connected(topology):
        raise TopologyPreconditionException(
            f"{operation} requires a connected topology, '{topology.name}' is not"
        )
