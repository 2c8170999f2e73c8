"""
File: ring_pipeline.py
Description: Builds a ring, compiles its rules and installs them on a fabric
Author: RingDiag Team
Created: 2025-06-09
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.core.domain.entities import Fabric, RuleSet, Topology, Walk, WalkMetrics
from src.core.domain.exceptions import ValidationException
from src.core.domain.services import (
    RingProgram,
    RingView,
    build_fabric,
    compile_bounceback,
    compile_ring,
    euler_cycle_directed,
    improve_walk,
    solve_cpp,
    total_static_rules,
    validate_walk,
    walk_metrics,
)
from src.core.domain.services.topology_analysis import require_connected
from src.core.domain.value_objects import ControlDomain, FailureMode, FailureState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingDeployment:
    """A ring with its compiled rules installed on a fault-free fabric."""

    topology: Topology
    walk: Walk
    metrics: WalkMetrics
    program: RingProgram
    bounce_sets: Tuple[RuleSet, ...]
    fabric: Fabric

    @property
    def rule_sets(self) -> List[RuleSet]:
        return self.program.static_sets() + list(self.bounce_sets)

    @property
    def static_rules(self) -> int:
        return total_static_rules(self.rule_sets)

    def view(self, domain: ControlDomain) -> RingView:
        domain.ensure_within(self.topology.num_switches)
        return RingView.for_domain(self.program, domain)


def synthesize_ring(
    topology: Topology,
    start: int = 0,
    asymmetric: bool = False,
    exact_matching: Optional[bool] = None,
) -> Walk:
    """Shortest covering ring improved for shared arcs, or the directed
    Euler ring when links may fail one way only."""
    require_connected(topology, "Ring synthesis")
    if asymmetric:
        return euler_cycle_directed(topology, start)
    return improve_walk(solve_cpp(topology, start, exact_matching), topology)


def deploy_ring(
    topology: Topology,
    walk: Optional[Walk] = None,
    asymmetric: bool = False,
    bounce_sets: Sequence[int] = (1, 2),
    tau_us: Optional[float] = None,
    exact_matching: Optional[bool] = None,
    tag_budget: Optional[int] = None,
) -> RingDeployment:
    """Walk, rules and fabric for one topology."""
    mode = FailureMode.ASYMMETRIC if asymmetric else FailureMode.SYMMETRIC
    if walk is None:
        walk = synthesize_ring(topology, asymmetric=asymmetric, exact_matching=exact_matching)
    elif not validate_walk(walk, topology, mode):
        raise ValidationException(
            f"Walk does not cover every {'arc' if asymmetric else 'link'} "
            f"of {topology.name}",
            field="walk",
        )

    program = compile_ring(walk, tag_budget)
    bounces = tuple(compile_bounceback(program, n) for n in bounce_sets)
    fabric = build_fabric(topology, program.static_sets() + list(bounces), tau_us)
    fabric.failures = FailureState.none(mode)

    deployment = RingDeployment(
        topology=topology,
        walk=walk,
        metrics=walk_metrics(walk),
        program=program,
        bounce_sets=bounces,
        fabric=fabric,
    )
    logger.info(
        f"Ring for {topology.name}: L={walk.length}, kappa={deployment.metrics.kappa}, "
        f"{deployment.static_rules} static rules"
    )
    return deployment
