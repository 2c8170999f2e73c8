"""
File: probe.py
Description: Probe injection points, traces and outcomes
Author: RingDiag Team
Created: 2025-06-05
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..value_objects import Arc, SwitchId


class DropReason(str, Enum):
    FAILED_LINK = "failed_link"
    NO_MATCH = "no_match"
    TTL_EXHAUSTED = "ttl_exhausted"


class HopEvent(str, Enum):
    FORWARD = "forward"
    DROP = "drop"
    TO_CONTROLLER = "to_controller"


@dataclass(frozen=True)
class InjectionPoint:
    """Where a controller hands a probe to the fabric.

    `in_arc` is the synthetic in-port: the switch treats the probe as if it
    had arrived on that arc.
    """

    switch: SwitchId
    in_arc: Optional[Arc] = None


@dataclass(frozen=True)
class TraceHop:
    switch: SwitchId
    rule_id: Optional[str]
    event: HopEvent
    arc: Optional[Arc] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "switch": self.switch,
            "rule_id": self.rule_id,
            "event": self.event.value,
            "arc": self.arc.to_dict() if self.arc is not None else None,
        }


@dataclass(frozen=True)
class ProbeOutcome:
    """Result of forwarding one probe until it returns or is dropped."""

    returned: bool
    hops: int
    trace: Tuple[TraceHop, ...] = field(default=())
    drop_reason: Optional[DropReason] = None

    def __post_init__(self):
        object.__setattr__(self, "trace", tuple(self.trace))

    def traversed_arcs(self) -> List[Arc]:
        """Arcs crossed successfully, in order."""
        return [
            hop.arc
            for hop in self.trace
            if hop.event is HopEvent.FORWARD and hop.arc is not None
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "returned": self.returned,
            "hops": self.hops,
            "drop_reason": self.drop_reason.value if self.drop_reason else None,
            "trace": [hop.to_dict() for hop in self.trace],
        }
