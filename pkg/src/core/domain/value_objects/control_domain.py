"""
File: control_domain.py
Description: Control domain value object
Author: RingDiag Team
Created: 2025-06-02
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable

from ..exceptions.base import DomainException
from .link import SwitchId


class InvalidControlDomainException(DomainException):
    """Exception raised when a control domain is empty or foreign."""

    pass


@dataclass(frozen=True)
class ControlDomain:
    """Switches a single controller is able to program."""

    switches: FrozenSet[SwitchId]
    controller: str = "C1"

    def __post_init__(self):
        """Validate control domain after initialization."""
        object.__setattr__(self, "switches", frozenset(self.switches))
        if not self.switches:
            raise InvalidControlDomainException(
                "Control domain must contain at least one switch"
            )
        if not self.controller or not self.controller.strip():
            raise InvalidControlDomainException("Controller id cannot be empty")

    @classmethod
    def of(cls, switches: Iterable[SwitchId], controller: str = "C1") -> "ControlDomain":
        return cls(switches=frozenset(switches), controller=controller)

    def contains(self, switch: SwitchId) -> bool:
        return switch in self.switches

    def ensure_within(self, num_switches: int) -> None:
        """Raise unless every switch id is below `num_switches`."""
        foreign = sorted(s for s in self.switches if s < 0 or s >= num_switches)
        if foreign:
            raise InvalidControlDomainException(
                f"Control domain references unknown switches {foreign}"
            )
