"""
File: rule.py
Description: Match/action forwarding rules and rule sets
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any, Dict, Iterator, Optional, Tuple, Union

from ..exceptions.base import DomainException
from ..value_objects import Arc, FlowTag, Header, SwitchId


class InvalidRuleException(DomainException):
    """Exception raised when a rule violates the action ordering contract."""

    pass


class Priority(IntEnum):
    """Rule priorities; higher wins."""

    WALK = 1
    BOUNCE = 2
    LOOPBACK = 3


class RuleKind(str, Enum):
    """Role of a rule set on the ring."""

    WALK_CW = "walk_cw"
    WALK_CCW = "walk_ccw"
    BOUNCE_1 = "bounce_1"
    BOUNCE_2 = "bounce_2"
    LOOPBACK = "loopback"

    @property
    def is_static(self) -> bool:
        return self is not RuleKind.LOOPBACK

    @property
    def priority(self) -> Priority:
        if self in (RuleKind.WALK_CW, RuleKind.WALK_CCW):
            return Priority.WALK
        if self in (RuleKind.BOUNCE_1, RuleKind.BOUNCE_2):
            return Priority.BOUNCE
        return Priority.LOOPBACK


class ActionType(str, Enum):
    """Actions a rule may apply, in order."""

    SET_VLAN = "set_vlan"
    SET_FLOW = "set_flow"
    DEC_TTL = "dec_ttl"
    FORWARD = "forward"
    SEND_BACK_IN_PORT = "send_back_in_port"
    TO_CONTROLLER = "to_controller"

    @property
    def is_forwarding(self) -> bool:
        return self in (
            ActionType.FORWARD,
            ActionType.SEND_BACK_IN_PORT,
            ActionType.TO_CONTROLLER,
        )


@dataclass(frozen=True)
class Action:
    type: ActionType
    value: Union[int, str, FlowTag, Arc, None] = None

    @classmethod
    def set_vlan(cls, tag: int) -> "Action":
        return cls(ActionType.SET_VLAN, tag)

    @classmethod
    def set_flow(cls, flow: FlowTag) -> "Action":
        return cls(ActionType.SET_FLOW, flow)

    @classmethod
    def dec_ttl(cls) -> "Action":
        return cls(ActionType.DEC_TTL)

    @classmethod
    def forward(cls, arc: Arc) -> "Action":
        return cls(ActionType.FORWARD, arc)

    @classmethod
    def send_back_in_port(cls) -> "Action":
        return cls(ActionType.SEND_BACK_IN_PORT)

    @classmethod
    def to_controller(cls, controller: str) -> "Action":
        return cls(ActionType.TO_CONTROLLER, controller)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"type": self.type.value}
        if isinstance(self.value, Arc):
            payload["arc"] = self.value.to_dict()
        elif isinstance(self.value, FlowTag):
            payload["flow"] = self.value.value
        elif self.value is not None:
            payload["value"] = self.value
        return payload

    def __str__(self) -> str:
        if self.value is None:
            return self.type.value
        value = self.value.value if isinstance(self.value, FlowTag) else self.value
        return f"{self.type.value}({value})"


@dataclass(frozen=True)
class Match:
    """Exact-or-wildcard predicate; None fields are wildcards."""

    flow: Optional[FlowTag] = None
    in_arc: Optional[Arc] = None
    vlan: Optional[int] = None
    bounce_target: Optional[int] = None
    bounce_set: Optional[int] = None
    controller: Optional[str] = None

    def matches(self, header: Header, in_arc: Optional[Arc]) -> bool:
        if self.flow is not None and header.flow is not self.flow:
            return False
        if self.in_arc is not None and in_arc != self.in_arc:
            return False
        if self.vlan is not None and header.vlan != self.vlan:
            return False
        if self.bounce_target is not None and header.bounce_target != self.bounce_target:
            return False
        if self.bounce_set is not None and header.bounce_set != self.bounce_set:
            return False
        if self.controller is not None and header.controller != self.controller:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {}
        if self.flow is not None:
            payload["flow"] = self.flow.value
        if self.in_arc is not None:
            payload["in_arc"] = self.in_arc.to_dict()
        for name in ("vlan", "bounce_target", "bounce_set", "controller"):
            value = getattr(self, name)
            if value is not None:
                payload[name] = value
        return payload

    def __str__(self) -> str:
        parts = []
        if self.controller is not None:
            parts.append(f"controller={self.controller}")
        if self.flow is not None:
            parts.append(f"flow={self.flow.value}")
        if self.bounce_target is not None:
            parts.append(f"target=v{self.bounce_target}/{self.bounce_set}")
        if self.in_arc is not None:
            parts.append(f"in={self.in_arc}")
        if self.vlan is not None:
            parts.append(f"vlan={self.vlan}")
        return ", ".join(parts) or "*"


@dataclass(frozen=True)
class Rule:
    """One flow-table entry at a switch."""

    rule_id: str
    switch: SwitchId
    priority: Priority
    match: Match
    actions: Tuple[Action, ...]

    def __post_init__(self):
        """Validate rule after initialization."""
        object.__setattr__(self, "actions", tuple(self.actions))
        forwarding = [i for i, a in enumerate(self.actions) if a.type.is_forwarding]
        if len(forwarding) > 1:
            raise InvalidRuleException(
                f"Rule {self.rule_id} has more than one forwarding action"
            )
        if forwarding and forwarding[0] != len(self.actions) - 1:
            raise InvalidRuleException(
                f"Rule {self.rule_id} must end with its forwarding action"
            )
        out_arc = self.out_arc
        if out_arc is not None and out_arc.tail != self.switch:
            raise InvalidRuleException(
                f"Rule {self.rule_id} at switch {self.switch} forwards on {out_arc}"
            )
        if self.match.in_arc is not None and self.match.in_arc.head != self.switch:
            raise InvalidRuleException(
                f"Rule {self.rule_id} at switch {self.switch} matches in-port "
                f"{self.match.in_arc}"
            )

    @property
    def out_arc(self) -> Optional[Arc]:
        for action in self.actions:
            if action.type is ActionType.FORWARD:
                return action.value  # type: ignore[return-value]
        return None

    @property
    def sets_vlan(self) -> Optional[int]:
        for action in self.actions:
            if action.type is ActionType.SET_VLAN:
                return action.value  # type: ignore[return-value]
        return None

    def signature(self) -> Tuple[Any, ...]:
        """Identity of the entry ignoring its id."""
        return (self.switch, self.priority, self.match, self.actions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule_id": self.rule_id,
            "switch": self.switch,
            "priority": int(self.priority),
            "match": self.match.to_dict(),
            "actions": [action.to_dict() for action in self.actions],
        }


@dataclass(frozen=True)
class RuleSet:
    """Rules of one kind compiled for a ring.

    For walk kinds `arrival_vlans[i]` is the tag a faultless probe carries
    when it reaches ring position i+1.
    """

    kind: RuleKind
    rules: Tuple[Rule, ...]
    ring_length: int = 0
    arrival_vlans: Tuple[Optional[int], ...] = field(default=())
    extra_rules: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "arrival_vlans", tuple(self.arrival_vlans))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def for_switch(self, switch: SwitchId) -> Tuple[Rule, ...]:
        return tuple(rule for rule in self.rules if rule.switch == switch)

    @property
    def vlans_used(self) -> int:
        return len({rule.match.vlan for rule in self.rules if rule.match.vlan is not None})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "ring_length": self.ring_length,
            "extra_rules": self.extra_rules,
            "vlans": self.vlans_used,
            "rules": [rule.to_dict() for rule in self.rules],
        }
