"""
File: walk_synthesis.py
Description: Shortest covering walks (Chinese postman and directed Euler cycles)
Author: RingDiag Team
Created: 2025-06-02
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.config.settings import settings

from ..entities.topology import Topology
from ..entities.walk import CoverMode, Walk, WalkMetrics
from ..exceptions.base import DomainException
from ..value_objects import Arc, EdgeId, FailureMode, SwitchId
from .topology_analysis import require_connected, odd_vertices

logger = logging.getLogger(__name__)

# (edge id, copy index, neighbour); copy 0 is the original link
_EdgeCopy = Tuple[EdgeId, int, SwitchId]


class WalkSynthesisException(DomainException):
    """Exception raised when no covering walk can be built."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message, code="walk_synthesis_error")


def solve_cpp(
    topology: Topology,
    start: SwitchId = 0,
    exact_matching: Optional[bool] = None,
) -> Walk:
    """Minimum-length closed walk from `start` traversing every edge.

    Odd-degree switches are paired by a minimum-weight perfect matching on
    hop distances, the matched shortest paths are duplicated and an Euler
    circuit of the augmented multigraph is extracted. A duplicated path
    edge used an even number of times is dropped again, so no edge is
    walked more than twice.
    """
    _check_walk_input(topology, start)

    odd = odd_vertices(topology)
    simple = topology.simple_graph()
    pairs = _pair_odd_vertices(simple, odd, exact_matching)

    extra: Counter = Counter()
    for u, v in pairs:
        path = nx.shortest_path(simple, u, v)
        for a, b in zip(path, path[1:]):
            extra[min(e.id for e in topology.edges_between(a, b))] += 1

    duplicated = sorted(edge_id for edge_id, count in extra.items() if count % 2)
    copies: Dict[SwitchId, List[_EdgeCopy]] = defaultdict(list)
    for edge in topology.edges:
        copies[edge.u].append((edge.id, 0, edge.v))
        copies[edge.v].append((edge.id, 0, edge.u))
    for edge_id in duplicated:
        edge = topology.edge(edge_id)
        copies[edge.u].append((edge.id, 1, edge.v))
        copies[edge.v].append((edge.id, 1, edge.u))

    arcs = _undirected_circuit(copies, start, topology.num_edges + len(duplicated))
    logger.debug(
        f"CPP walk on {topology.name}: {len(odd)} odd switches, "
        f"{len(duplicated)} duplicated links, length {len(arcs)}"
    )
    return Walk(arcs=tuple(arcs), start=start, cover=CoverMode.UNDIRECTED)


def euler_cycle_directed(topology: Topology, start: SwitchId = 0) -> Walk:
    """Closed walk over both orientations of every edge, each exactly once."""
    _check_walk_input(topology, start)

    outgoing: Dict[SwitchId, List[Arc]] = defaultdict(list)
    for edge in topology.edges:
        for arc in edge.arcs():
            outgoing[arc.tail].append(arc)
    for arcs in outgoing.values():
        arcs.sort()

    cursor: Dict[SwitchId, int] = defaultdict(int)
    stack: List[Tuple[SwitchId, Optional[Arc]]] = [(start, None)]
    circuit: List[Arc] = []
    while stack:
        node, arrived_by = stack[-1]
        if cursor[node] < len(outgoing[node]):
            arc = outgoing[node][cursor[node]]
            cursor[node] += 1
            stack.append((arc.head, arc))
        else:
            stack.pop()
            if arrived_by is not None:
                circuit.append(arrived_by)
    circuit.reverse()

    if len(circuit) != 2 * topology.num_edges:
        raise WalkSynthesisException(
            f"Directed Euler cycle on {topology.name} covered {len(circuit)} "
            f"of {2 * topology.num_edges} arcs"
        )
    return Walk(arcs=tuple(circuit), start=start, cover=CoverMode.DIRECTED)


def walk_metrics(walk: Walk) -> WalkMetrics:
    """Duplicates are counted per directed arc."""
    unique = len(set(walk.arcs))
    return WalkMetrics(
        length=walk.length, duplicates=walk.length - unique, unique_arcs=unique
    )


def reverse_walk(walk: Walk) -> Walk:
    """Counter-clockwise ring: arcs reversed in orientation and order."""
    arcs = tuple(arc.reversed() for arc in reversed(walk.arcs))
    return Walk(arcs=arcs, start=walk.start, cover=walk.cover)


def validate_walk(walk: Walk, topology: Topology, mode: FailureMode) -> bool:
    """True iff the walk is closed, consistent with the topology and covering."""
    arcs = walk.arcs
    for index, arc in enumerate(arcs):
        if not topology.has_arc(arc):
            return False
        if arc.head != arcs[(index + 1) % len(arcs)].tail:
            return False
    if mode is FailureMode.ASYMMETRIC:
        return len(set(arcs)) == 2 * topology.num_edges
    return {arc.edge for arc in arcs} == set(range(topology.num_edges))


def edge_multiplicity(walk: Walk) -> Counter:
    """How many times each edge is traversed in either direction."""
    return Counter(arc.edge for arc in walk.arcs)


def _check_walk_input(topology: Topology, start: SwitchId) -> None:
    if topology.num_edges == 0:
        raise WalkSynthesisException(f"Topology {topology.name} has no links to walk")
    if not topology.has_switch(start):
        raise WalkSynthesisException(f"Start switch {start} is not in {topology.name}")
    require_connected(topology, "walk synthesis")
    if topology.degree(start) == 0:
        raise WalkSynthesisException(f"Start switch {start} has no links")


def _pair_odd_vertices(
    graph: nx.Graph, odd: Sequence[SwitchId], exact: Optional[bool]
) -> List[Tuple[SwitchId, SwitchId]]:
    if not odd:
        return []
    distances = {u: nx.single_source_shortest_path_length(graph, u) for u in odd}

    use_exact = exact if exact is not None else len(odd) <= settings.exact_matching_limit
    if not use_exact:
        logger.warning(
            f"{len(odd)} odd switches exceed the exact matching limit "
            f"({settings.exact_matching_limit}); pairing greedily"
        )
        return _greedy_pairs(odd, distances)

    # Integer weights keep the blossom solver exact; the id gap breaks ties.
    scale = len(graph) * len(graph) + 1
    complete = nx.Graph()
    for i, u in enumerate(odd):
        for v in odd[i + 1 :]:
            complete.add_edge(u, v, weight=distances[u][v] * scale + abs(u - v))
    matching = nx.min_weight_matching(complete)
    return sorted((min(u, v), max(u, v)) for u, v in matching)


def _greedy_pairs(
    odd: Sequence[SwitchId], distances: Dict[SwitchId, Dict[SwitchId, int]]
) -> List[Tuple[SwitchId, SwitchId]]:
    candidates = sorted(
        (distances[u][v], u, v) for i, u in enumerate(odd) for v in odd[i + 1 :]
    )
    matched: Set[SwitchId] = set()
    pairs: List[Tuple[SwitchId, SwitchId]] = []
    for _, u, v in candidates:
        if u in matched or v in matched:
            continue
        matched.update((u, v))
        pairs.append((u, v))
    return pairs


def _undirected_circuit(
    copies: Dict[SwitchId, List[_EdgeCopy]], start: SwitchId, total: int
) -> List[Arc]:
    """Hierholzer on a multigraph, always taking the lowest unused (edge, copy)."""
    for incident in copies.values():
        incident.sort()
    used: Set[Tuple[EdgeId, int]] = set()
    cursor: Dict[SwitchId, int] = defaultdict(int)

    def next_copy(node: SwitchId) -> Optional[_EdgeCopy]:
        incident = copies[node]
        while cursor[node] < len(incident):
            candidate = incident[cursor[node]]
            cursor[node] += 1
            if (candidate[0], candidate[1]) not in used:
                return candidate
        return None

    stack: List[Tuple[SwitchId, Optional[Arc]]] = [(start, None)]
    circuit: List[Arc] = []
    while stack:
        node, arrived_by = stack[-1]
        step = next_copy(node)
        if step is not None:
            edge_id, copy, neighbour = step
            used.add((edge_id, copy))
            stack.append((neighbour, Arc(edge=edge_id, tail=node, head=neighbour)))
        else:
            stack.pop()
            if arrived_by is not None:
                circuit.append(arrived_by)
    circuit.reverse()

    if len(circuit) != total:
        raise WalkSynthesisException(
            f"Euler circuit covered {len(circuit)} of {total} link copies"
        )
    return circuit
