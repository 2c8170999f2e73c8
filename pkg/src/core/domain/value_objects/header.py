"""
File: header.py
Description: Abstract probe header fields
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from ..exceptions.base import DomainException


class InvalidHeaderException(DomainException):
    """Exception raised when a probe header carries inconsistent fields."""

    pass


class FlowTag(str, Enum):
    """Ring direction a probe currently travels in."""

    A = "A"  # clockwise
    B = "B"  # counter-clockwise

    def opposite(self) -> "FlowTag":
        return FlowTag.B if self is FlowTag.A else FlowTag.A


@dataclass(frozen=True)
class Header:
    """Header of a diagnosis probe.

    `bounce_target` is a 1-based ring position, `bounce_set` selects which
    bounce-back rule set may reverse the probe there.
    """

    flow: FlowTag
    controller: str = "C1"
    bounce_target: Optional[int] = None
    bounce_set: int = 1
    vlan: Optional[int] = None
    ttl: Optional[int] = None

    def __post_init__(self):
        """Validate header after initialization."""
        if not isinstance(self.flow, FlowTag):
            object.__setattr__(self, "flow", FlowTag(self.flow))
        if self.bounce_set not in (1, 2):
            raise InvalidHeaderException(
                f"Bounce set must be 1 or 2, got {self.bounce_set}"
            )
        if self.bounce_target is not None and self.bounce_target < 1:
            raise InvalidHeaderException("Bounce target positions start at 1")
        if self.vlan is not None and self.vlan < 1:
            raise InvalidHeaderException(f"VLAN tag must be >= 1, got {self.vlan}")
        if self.ttl is not None and self.ttl < 0:
            raise InvalidHeaderException("TTL cannot be negative")

    def with_changes(self, **changes) -> "Header":
        return replace(self, **changes)
