"""
File: compile_rules_use_case.py
Description: Compiles the static rule tables of one topology's ring
Author: RingDiag Team
Created: 2025-06-10
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.core.application.services import RingDeployment, deploy_ring
from src.core.domain.entities import CoverMode, Rule, Topology, Walk
from src.core.domain.exceptions import DomainException
from src.core.ports.repositories import ITopologyRepository

logger = logging.getLogger(__name__)


class CompileRulesUseCaseException(DomainException):
    """Exception raised when rule compilation for a topology fails."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


@dataclass
class CompileRulesRequest:
    """Request for the rule tables of one topology.

    `bounce_sets` (1, 2) gives the 4L - 2κ deployment that supports
    counter-clockwise searches, (1,) the 3L - 2κ one.
    """

    topology: str
    bounce_sets: List[int] = field(default_factory=lambda: [1, 2])
    asymmetric: bool = False
    walk: Optional[List[str]] = None
    exact_matching: Optional[bool] = None
    tag_budget: Optional[int] = None


@dataclass
class RuleRow:
    """One rule as it appears in a rule table."""

    switch: str
    priority: int
    kind: str
    rule_id: str
    match: str
    actions: str

    @classmethod
    def of(cls, topology: Topology, kind: str, rule: Rule) -> "RuleRow":
        return cls(
            switch=topology.label(rule.switch),
            priority=int(rule.priority),
            kind=kind,
            rule_id=rule.rule_id,
            match=str(rule.match),
            actions=", ".join(str(action) for action in rule.actions),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "switch": self.switch,
            "priority": self.priority,
            "kind": self.kind,
            "rule_id": self.rule_id,
            "match": self.match,
            "actions": self.actions,
        }


@dataclass
class CompileRulesResponse:
    """Compiled rule sets, ring metrics and rule table rows."""

    topology: Topology
    deployment: RingDeployment
    rows: List[RuleRow]

    def to_dict(self) -> Dict[str, Any]:
        metrics = self.deployment.metrics
        return {
            "topology": self.topology.name,
            "walk": self.deployment.walk.to_dict(),
            "metrics": metrics.to_dict(),
            "static_rules": self.deployment.static_rules,
            "extra_rules": sum(s.extra_rules for s in self.deployment.rule_sets),
            "rule_sets": [s.to_dict() for s in self.deployment.rule_sets],
        }


class CompileRulesUseCase:
    """Use case for compiling a ring's walk and bounce-back rules."""

    def __init__(self, topology_repository: ITopologyRepository):
        self.topology_repository = topology_repository

    async def execute(self, request: CompileRulesRequest) -> CompileRulesResponse:
        """Execute rule compilation."""
        try:
            self._validate_request(request)

            topology = await self.topology_repository.load(request.topology)
            walk = None
            if request.walk:
                walk = Walk.from_switch_sequence(
                    topology,
                    [topology.switch_by_label(label) for label in request.walk],
                    cover=CoverMode.DIRECTED if request.asymmetric else CoverMode.UNDIRECTED,
                )
            deployment = deploy_ring(
                topology,
                walk=walk,
                asymmetric=request.asymmetric,
                bounce_sets=request.bounce_sets,
                exact_matching=request.exact_matching,
                tag_budget=request.tag_budget,
            )

            by_priority = sorted(
                deployment.rule_sets, key=lambda rule_set: -rule_set.kind.priority
            )
            entries = [
                (rule_set.kind.value, rule)
                for switch in topology.switches
                for rule_set in by_priority
                for rule in rule_set.for_switch(switch)
            ]
            rows = [RuleRow.of(topology, kind, rule) for kind, rule in entries]
            return CompileRulesResponse(topology=topology, deployment=deployment, rows=rows)

        except DomainException:
            raise
        except Exception as e:
            raise CompileRulesUseCaseException(f"Failed to compile rules: {str(e)}")

    def _validate_request(self, request: CompileRulesRequest) -> None:
        if not request.topology:
            raise CompileRulesUseCaseException("Topology is required")
        if not request.bounce_sets or any(n not in (1, 2) for n in request.bounce_sets):
            raise CompileRulesUseCaseException("Bounce sets must be drawn from 1 and 2")
        if len(set(request.bounce_sets)) != len(request.bounce_sets):
            raise CompileRulesUseCaseException("Bounce sets must not repeat")
