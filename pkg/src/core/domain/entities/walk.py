"""
File: walk.py
Description: Closed walk (logical ring) entity and its cost metrics
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from ..exceptions.base import DomainException
from ..value_objects import Arc, EdgeId, SwitchId
from .topology import Topology


class InvalidWalkException(DomainException):
    """Exception raised when a walk is empty, open or inconsistent."""

    pass


class CoverMode(str, Enum):
    """What the walk was constructed to cover."""

    UNDIRECTED = "undirected"  # every edge at least once
    DIRECTED = "directed"  # every arc at least once


@dataclass(frozen=True)
class Walk:
    """Closed walk v_1..v_L; position i leaves switch f(v_i) along arcs[i-1]."""

    arcs: Tuple[Arc, ...]
    start: SwitchId
    cover: CoverMode = CoverMode.UNDIRECTED

    def __post_init__(self):
        """Validate walk after initialization."""
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if not self.arcs:
            raise InvalidWalkException("A walk needs at least one arc")
        if self.arcs[0].tail != self.start:
            raise InvalidWalkException(
                f"Walk starts at {self.arcs[0].tail}, expected {self.start}"
            )
        for index, arc in enumerate(self.arcs):
            following = self.arcs[(index + 1) % len(self.arcs)]
            if arc.head != following.tail:
                raise InvalidWalkException(
                    f"Walk is not closed: arc {index} ends at {arc.head}, "
                    f"next arc starts at {following.tail}"
                )

    @classmethod
    def from_switch_sequence(
        cls,
        topology: Topology,
        switches: Sequence[SwitchId],
        edge_ids: Optional[Sequence[EdgeId]] = None,
        cover: CoverMode = CoverMode.UNDIRECTED,
    ) -> "Walk":
        """Build a ring from its switch sequence.

        The sequence may repeat the start switch at the end. Without
        `edge_ids` the lowest edge id between neighbours is used.
        """
        sequence = list(switches)
        if len(sequence) > 1 and sequence[0] == sequence[-1]:
            sequence = sequence[:-1]
        if len(sequence) < 2:
            raise InvalidWalkException("A ring visits at least two positions")
        if edge_ids is not None and len(edge_ids) != len(sequence):
            raise InvalidWalkException(
                f"Expected {len(sequence)} edge ids, got {len(edge_ids)}"
            )

        arcs: List[Arc] = []
        for index, tail in enumerate(sequence):
            head = sequence[(index + 1) % len(sequence)]
            if edge_ids is not None:
                edge = topology.edge(edge_ids[index])
                if {edge.u, edge.v} != {tail, head}:
                    raise InvalidWalkException(
                        f"Edge {edge.id} does not join switches {tail} and {head}"
                    )
            else:
                candidates = topology.edges_between(tail, head)
                if not candidates:
                    raise InvalidWalkException(f"No link between {tail} and {head}")
                edge = min(candidates, key=lambda e: e.id)
            arcs.append(Arc(edge=edge.id, tail=tail, head=head))
        return cls(arcs=tuple(arcs), start=sequence[0], cover=cover)

    @property
    def length(self) -> int:
        return len(self.arcs)

    def switch_at(self, position: int) -> SwitchId:
        """f(v_position) for a 1-based ring position."""
        return self.arc_at(position).tail

    def arc_at(self, position: int) -> Arc:
        """Arc leaving ring position `position` (1-based)."""
        self._check_position(position)
        return self.arcs[position - 1]

    def arc_into(self, position: int) -> Arc:
        """Arc arriving at ring position `position` (1-based)."""
        self._check_position(position)
        return self.arcs[position - 2]

    def positions_of(self, switch: SwitchId) -> List[int]:
        return [i + 1 for i, arc in enumerate(self.arcs) if arc.tail == switch]

    def switches(self) -> List[SwitchId]:
        return [arc.tail for arc in self.arcs]

    def rotated_to(self, switch: SwitchId) -> "Walk":
        """Same ring started at the first visit of `switch`."""
        positions = self.positions_of(switch)
        if not positions:
            raise InvalidWalkException(f"Switch {switch} is not on the walk")
        offset = positions[0] - 1
        arcs = self.arcs[offset:] + self.arcs[:offset]
        return Walk(arcs=arcs, start=switch, cover=self.cover)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "cover": self.cover.value,
            "arcs": [arc.to_dict() for arc in self.arcs],
        }

    def _check_position(self, position: int) -> None:
        if position < 1 or position > len(self.arcs):
            raise InvalidWalkException(
                f"Ring position {position} outside 1..{len(self.arcs)}"
            )


@dataclass(frozen=True)
class WalkMetrics:
    """Length, duplicate arcs (kappa) and static rule cost of a walk."""

    length: int
    duplicates: int
    unique_arcs: int

    def __post_init__(self):
        if self.duplicates < 0:
            raise InvalidWalkException("Duplicate count cannot be negative")
        if self.length - self.duplicates != self.unique_arcs:
            raise InvalidWalkException("Unique arcs must equal length minus duplicates")

    @property
    def kappa(self) -> int:
        return self.duplicates

    @property
    def rule_cost(self) -> int:
        return self.length - self.duplicates

    def to_dict(self) -> dict:
        return {"L": self.length, "kappa": self.duplicates, "rule_cost": self.rule_cost}
