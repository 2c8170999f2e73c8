"""
File: failure_state.py
Description: Link failure state value object
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable

from ..exceptions.base import DomainException
from .link import Arc, EdgeId


class InvalidFailureStateException(DomainException):
    """Exception raised when a failure state mixes edges and arcs."""

    pass


class FailureMode(str, Enum):
    """Whether a link fails in both directions at once."""

    SYMMETRIC = "symmetric"
    ASYMMETRIC = "asymmetric"


@dataclass(frozen=True)
class FailureState:
    """Failed edges (symmetric mode) or failed arcs (asymmetric mode)."""

    mode: FailureMode = FailureMode.SYMMETRIC
    edges: FrozenSet[EdgeId] = field(default_factory=frozenset)
    arcs: FrozenSet[Arc] = field(default_factory=frozenset)

    def __post_init__(self):
        """Validate failure state after initialization."""
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        if self.mode is FailureMode.SYMMETRIC and self.arcs:
            raise InvalidFailureStateException("Symmetric failures are stored as edges")
        if self.mode is FailureMode.ASYMMETRIC and self.edges:
            raise InvalidFailureStateException("Asymmetric failures are stored as arcs")

    @classmethod
    def none(cls, mode: FailureMode = FailureMode.SYMMETRIC) -> "FailureState":
        return cls(mode=mode)

    @classmethod
    def symmetric(cls, edges: Iterable[EdgeId]) -> "FailureState":
        return cls(mode=FailureMode.SYMMETRIC, edges=frozenset(edges))

    @classmethod
    def asymmetric(cls, arcs: Iterable[Arc]) -> "FailureState":
        return cls(mode=FailureMode.ASYMMETRIC, arcs=frozenset(arcs))

    @property
    def is_empty(self) -> bool:
        return not self.edges and not self.arcs

    @property
    def size(self) -> int:
        return len(self.edges) + len(self.arcs)

    def blocks(self, arc: Arc) -> bool:
        """True when a packet sent along `arc` is dropped."""
        if self.mode is FailureMode.SYMMETRIC:
            return arc.edge in self.edges
        return arc in self.arcs
