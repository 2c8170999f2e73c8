"""
File: fabric.py
Description: Simulated forwarding plane entity
Author: RingDiag Team
Created: 2025-06-05
"""

from dataclasses import dataclass, field
from typing import Dict, List, Set

from ..exceptions.base import DomainException
from ..value_objects import FailureState, SwitchId
from .rule import Rule, RuleKind
from .topology import Topology


class FabricConfigurationException(DomainException):
    """Exception raised when rules or failures do not fit the topology."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message, code="fabric_configuration_error")


@dataclass
class Fabric:
    """Topology plus per-switch flow tables and the current failure state.

    Tables are ordered by priority, then by insertion order.
    """

    topology: Topology
    tables: Dict[SwitchId, List[Rule]]
    failures: FailureState = field(default_factory=FailureState.none)
    tau_us: float = 1.0
    hop_budget: int = 4
    installed_kinds: Set[RuleKind] = field(default_factory=set)

    def table(self, switch: SwitchId) -> List[Rule]:
        return self.tables.get(switch, [])

    def has_kind(self, kind: RuleKind) -> bool:
        return kind in self.installed_kinds

    @property
    def rule_count(self) -> int:
        return sum(len(rules) for rules in self.tables.values())

    def install(self, rule: Rule) -> None:
        """Insert after every rule of equal or higher priority."""
        if not self.topology.has_switch(rule.switch):
            raise FabricConfigurationException(
                f"Rule {rule.rule_id} targets unknown switch {rule.switch}"
            )
        table = self.tables.setdefault(rule.switch, [])
        if any(existing.rule_id == rule.rule_id for existing in table):
            raise FabricConfigurationException(
                f"Rule {rule.rule_id} is already installed"
            )
        index = len(table)
        for position, existing in enumerate(table):
            if existing.priority < rule.priority:
                index = position
                break
        table.insert(index, rule)

    def remove(self, rule_id: str) -> bool:
        for table in self.tables.values():
            for position, rule in enumerate(table):
                if rule.rule_id == rule_id:
                    del table[position]
                    return True
        return False
