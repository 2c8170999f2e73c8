"""
File: conftest.py
Description: Shared topologies, rings and oracles for the test suite
Author: RingDiag Team
Created: 2025-06-11
"""

import random
from collections import deque
from itertools import combinations, product
from typing import Dict, List, Optional, Set

import networkx as nx
import pytest

from src.core.domain.entities import Topology, Walk
from src.core.domain.value_objects import Arc, SwitchId
from src.core.ports.repositories import ITopologyRepository
from src.infrastructure.topology_sources import load_edge_list

MESH7_PAIRS = [(0, 1), (0, 4), (1, 2), (1, 4), (2, 3), (2, 5), (3, 6), (4, 5), (5, 6)]
MESH7_LABELS = ["s1", "s2", "s3", "s4", "s5", "s6", "s7"]

# Ring of the rule-table example, as labels; returns to s1 after s2.
TABLE_RING = ["s1", "s5", "s2", "s3", "s6", "s7", "s4", "s3", "s6", "s5", "s2"]
# Same ring started at s5, the controller sits at position 11 (s1).
EXAMPLE_RING = ["s5", "s2", "s3", "s6", "s7", "s4", "s3", "s6", "s5", "s2", "s1"]

MULTI4_PAIRS = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (0, 2), (0, 2), (0, 2)]
MULTI4_SHARED_SWITCHES = [0, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 2]
MULTI4_SHARED_EDGES = [0, 1, 2, 3, 5, 2, 3, 0, 4, 3, 6, 7]
# Ten hops, only 3 -> 0 repeats.
MULTI4_CENTER_SWITCHES = [0, 1, 3, 0, 2, 1, 2, 3, 0, 2]
MULTI4_CENTER_EDGES = [0, 4, 3, 5, 1, 1, 2, 3, 6, 7]

MESH7_EDGE_LIST = """# seven switches, nine links
s1 s2
s1 s5
s2 s3
s2 s5
s3 s4
s3 s6
s4 s7
s5 s6
s6 s7
"""


def labelled_walk(topology: Topology, labels: List[str]) -> Walk:
    return Walk.from_switch_sequence(
        topology, [topology.switch_by_label(label) for label in labels]
    )


def topology_from_graph(graph: nx.Graph, name: str) -> Topology:
    nodes = sorted(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    return Topology.from_edge_pairs(
        len(nodes), [(index[u], index[v]) for u, v in graph.edges], name=name
    )


def random_connected_topologies(
    count: int, max_switches: int, max_edges: int, seed: int
) -> List[Topology]:
    """Connected simple graphs from networkx.gnm_random_graph with fixed seeds."""
    rng = random.Random(seed)
    topologies: List[Topology] = []
    attempt = 0
    while len(topologies) < count:
        attempt += 1
        n = rng.randint(3, max_switches)
        m = rng.randint(n - 1, min(max_edges, n * (n - 1) // 2))
        graph = nx.gnm_random_graph(n, m, seed=seed * 1000 + attempt)
        if nx.is_connected(graph):
            topologies.append(topology_from_graph(graph, f"gnm-{seed}-{attempt}"))
    return topologies


def brute_force_cpp_length(topology: Topology, start: SwitchId = 0) -> int:
    """Shortest closed walk from `start` covering every edge, by BFS over
    (switch, covered-edge mask)."""
    full = (1 << topology.num_edges) - 1
    seen = {(start, 0)}
    queue = deque([(start, 0, 0)])
    while queue:
        node, mask, steps = queue.popleft()
        if node == start and mask == full:
            return steps
        for edge in topology.incident(node):
            state = (edge.other(node), mask | (1 << edge.id))
            if state not in seen:
                seen.add(state)
                queue.append((state[0], state[1], steps + 1))
    raise AssertionError("no covering walk")


def brute_force_bridges(topology: Topology) -> Set[int]:
    bridges = set()
    for edge in topology.edges:
        graph = nx.MultiGraph()
        graph.add_nodes_from(topology.switches)
        graph.add_edges_from((e.u, e.v) for e in topology.edges if e.id != edge.id)
        if not nx.is_connected(graph):
            bridges.add(edge.id)
    return bridges


def brute_force_min_rule_cost(topology: Topology) -> int:
    """Fewest distinct arcs of any closed walk covering every edge.

    Such a walk exists on an arc set iff the set is strongly connected, so
    search over which edges get both orientations and how the rest point.
    """
    bridges = brute_force_bridges(topology)
    optional = [edge for edge in topology.edges if edge.id not in bridges]
    for extra in range(len(optional) + 1):
        for doubled in combinations(optional, extra):
            both = bridges | {edge.id for edge in doubled}
            single = [edge for edge in topology.edges if edge.id not in both]
            for flips in product((False, True), repeat=len(single)):
                graph = nx.DiGraph()
                graph.add_nodes_from(topology.switches)
                for edge in topology.edges:
                    if edge.id in both:
                        graph.add_edges_from([(edge.u, edge.v), (edge.v, edge.u)])
                for edge, flip in zip(single, flips):
                    graph.add_edge(*((edge.v, edge.u) if flip else (edge.u, edge.v)))
                if nx.is_strongly_connected(graph):
                    return topology.num_edges + len(both)
    raise AssertionError("no covering walk")


def first_failed_arc(walk: Walk, position: int, failed: Set[int]) -> Optional[Arc]:
    """First arc of a failed link met walking clockwise from `position`."""
    for step in range(walk.length):
        arc = walk.arcs[(position - 1 + step) % walk.length]
        if arc.edge in failed:
            return arc
    return None


class InMemoryTopologyRepository(ITopologyRepository):
    """Topology repository double keyed by name."""

    def __init__(
        self,
        topologies: Dict[str, Topology],
        broken: Optional[Dict[str, Exception]] = None,
    ):
        self.topologies = topologies
        self.broken = broken or {}

    async def list_names(self) -> List[str]:
        return sorted(set(self.topologies) | set(self.broken))

    async def load(self, name: str) -> Topology:
        if name in self.broken:
            raise self.broken[name]
        return self.topologies[name]


@pytest.fixture
def mesh7() -> Topology:
    return Topology.from_edge_pairs(7, MESH7_PAIRS, name="mesh7", labels=MESH7_LABELS)


@pytest.fixture
def multi4() -> Topology:
    return Topology.from_edge_pairs(
        4, MULTI4_PAIRS, name="multi4", labels=["s1", "s2", "s3", "s4"]
    )


@pytest.fixture
def table_ring(mesh7) -> Walk:
    return labelled_walk(mesh7, TABLE_RING)


@pytest.fixture
def example_ring(mesh7) -> Walk:
    return labelled_walk(mesh7, EXAMPLE_RING)


@pytest.fixture
def line4() -> Topology:
    return Topology.from_edge_pairs(
        4, [(0, 1), (1, 2), (2, 3)], name="line4", labels=["s1", "s2", "s3", "s4"]
    )


@pytest.fixture
def cycle64() -> Topology:
    return Topology.from_edge_pairs(
        64, [(i, (i + 1) % 64) for i in range(64)], name="c64"
    )


@pytest.fixture
def mesh7_edge_list_file(tmp_path):
    path = tmp_path / "mesh7.edges"
    path.write_text(MESH7_EDGE_LIST)
    return path


@pytest.fixture
def mesh7_from_text() -> Topology:
    return load_edge_list(MESH7_EDGE_LIST, name="mesh7")
