"""
File: link.py
Description: Link value objects (undirected edges and their directed arcs)
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass
from typing import Tuple

from ..exceptions.base import DomainException

SwitchId = int
EdgeId = int


class InvalidLinkException(DomainException):
    """Exception raised when an edge or arc is malformed."""

    pass


@dataclass(frozen=True)
class Edge:
    """Bidirectional link between two distinct switches."""

    id: EdgeId
    u: SwitchId
    v: SwitchId

    def __post_init__(self):
        """Validate edge after initialization."""
        if self.id < 0:
            raise InvalidLinkException(f"Edge id must be non-negative, got {self.id}")
        if self.u < 0 or self.v < 0:
            raise InvalidLinkException(f"Edge {self.id} references a negative switch")
        if self.u == self.v:
            raise InvalidLinkException(
                f"Edge {self.id} is a self-loop on switch {self.u}"
            )

    @property
    def endpoints(self) -> Tuple[SwitchId, SwitchId]:
        return (self.u, self.v)

    def touches(self, switch: SwitchId) -> bool:
        return switch == self.u or switch == self.v

    def other(self, switch: SwitchId) -> SwitchId:
        """Return the endpoint opposite to `switch`."""
        if switch == self.u:
            return self.v
        if switch == self.v:
            return self.u
        raise InvalidLinkException(f"Switch {switch} is not an endpoint of edge {self.id}")

    def arcs(self) -> Tuple["Arc", "Arc"]:
        """Both orientations, u->v first."""
        return (
            Arc(edge=self.id, tail=self.u, head=self.v),
            Arc(edge=self.id, tail=self.v, head=self.u),
        )

    def arc_from(self, tail: SwitchId) -> "Arc":
        return Arc(edge=self.id, tail=tail, head=self.other(tail))


@dataclass(frozen=True, order=True)
class Arc:
    """One direction of an edge. Ordering is (edge, tail, head)."""

    edge: EdgeId
    tail: SwitchId
    head: SwitchId

    def __post_init__(self):
        if self.tail == self.head:
            raise InvalidLinkException(f"Arc on edge {self.edge} has tail == head")

    def reversed(self) -> "Arc":
        return Arc(edge=self.edge, tail=self.head, head=self.tail)

    def orients(self, edge: Edge) -> bool:
        """True when this arc is one of the two orientations of `edge`."""
        return self.edge == edge.id and {self.tail, self.head} == {edge.u, edge.v}

    def to_dict(self) -> dict:
        return {"edge_id": self.edge, "tail": self.tail, "head": self.head}

    def __str__(self) -> str:
        return f"e{self.edge}:{self.tail}->{self.head}"
