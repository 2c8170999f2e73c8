"""
File: topology.py
Description: Topology entity (undirected multigraph of switches and links)
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..exceptions.base import DomainException
from ..value_objects import Arc, Edge, EdgeId, SwitchId


class InvalidTopologyException(DomainException):
    """Exception raised when a topology violates its structural invariants."""

    pass


@dataclass(frozen=True)
class Topology:
    """Forwarding-plane topology with dense switch and edge ids.

    Parallel edges are distinct edges; self-loops are rejected. `labels`
    keeps the node ids of the source document, indexed by switch id.
    """

    switches: Tuple[SwitchId, ...]
    edges: Tuple[Edge, ...]
    name: str = "topology"
    labels: Tuple[str, ...] = ()
    _incident: Dict[SwitchId, Tuple[Edge, ...]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        """Validate topology after initialization."""
        object.__setattr__(self, "switches", tuple(self.switches))
        object.__setattr__(self, "edges", tuple(self.edges))

        if self.switches != tuple(range(len(self.switches))):
            raise InvalidTopologyException("Switch ids must be dense and start at 0")

        for index, edge in enumerate(self.edges):
            if edge.id != index:
                raise InvalidTopologyException(
                    f"Edge ids must be dense, found id {edge.id} at index {index}"
                )
            if edge.u >= len(self.switches) or edge.v >= len(self.switches):
                raise InvalidTopologyException(
                    f"Edge {edge.id} references an unknown switch"
                )

        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(str(s) for s in self.switches)
            )
        elif len(self.labels) != len(self.switches):
            raise InvalidTopologyException("One label per switch is required")

        incident: Dict[SwitchId, List[Edge]] = {s: [] for s in self.switches}
        for edge in self.edges:
            incident[edge.u].append(edge)
            incident[edge.v].append(edge)
        object.__setattr__(
            self, "_incident", {s: tuple(es) for s, es in incident.items()}
        )

    @classmethod
    def from_edge_pairs(
        cls,
        num_switches: int,
        pairs: Iterable[Tuple[SwitchId, SwitchId]],
        name: str = "topology",
        labels: Optional[Sequence[str]] = None,
    ) -> "Topology":
        """Build a topology numbering edges in the order given."""
        edges = tuple(Edge(id=i, u=u, v=v) for i, (u, v) in enumerate(pairs))
        return cls(
            switches=tuple(range(num_switches)),
            edges=edges,
            name=name,
            labels=tuple(labels) if labels else (),
        )

    @property
    def num_switches(self) -> int:
        return len(self.switches)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: EdgeId) -> Edge:
        if edge_id < 0 or edge_id >= len(self.edges):
            raise InvalidTopologyException(f"Unknown edge {edge_id} in {self.name}")
        return self.edges[edge_id]

    def has_switch(self, switch: SwitchId) -> bool:
        return 0 <= switch < len(self.switches)

    def incident(self, switch: SwitchId) -> Tuple[Edge, ...]:
        return self._incident.get(switch, ())

    def degree(self, switch: SwitchId) -> int:
        return len(self.incident(switch))

    def has_arc(self, arc: Arc) -> bool:
        """True when `arc` orients an existing edge."""
        return 0 <= arc.edge < len(self.edges) and arc.orients(self.edges[arc.edge])

    def label(self, switch: SwitchId) -> str:
        return self.labels[switch]

    def switch_by_label(self, label: str) -> SwitchId:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidTopologyException(f"No switch labelled '{label}' in {self.name}")

    def edges_between(self, u: SwitchId, v: SwitchId) -> List[Edge]:
        return [e for e in self.incident(u) if e.other(u) == v]

    def to_networkx(self) -> nx.MultiGraph:
        """Multigraph view keyed by edge id."""
        graph = nx.MultiGraph(name=self.name)
        graph.add_nodes_from(self.switches)
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, key=edge.id)
        return graph

    def simple_graph(self) -> nx.Graph:
        """Simple graph view with parallel edges collapsed."""
        return nx.Graph(self.to_networkx())
