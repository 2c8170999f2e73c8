"""
File: run_diagnose_use_case.py
Description: End-to-end diagnosis of one topology: ring, rules, fabric, failures
and a probe campaign
Author: RingDiag Team
Created: 2025-06-10
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.config.settings import settings
from src.core.application.services import RingDeployment, deploy_ring
from src.core.domain.entities import (
    CoverMode,
    DiagnosisReport,
    Strategy,
    Topology,
    Walk,
)
from src.core.domain.exceptions import DomainException, ValidationException
from src.core.domain.services import (
    ProbeObserver,
    as_asymmetric,
    locate_bidirectional,
    locate_multi,
    locate_parallel,
    locate_single,
    set_failures,
    verify,
)
from src.core.domain.value_objects import (
    Arc,
    ControlDomain,
    Edge,
    FailureState,
    SwitchId,
)
from src.core.ports.repositories import ITopologyRepository

logger = logging.getLogger(__name__)


class RunDiagnoseUseCaseException(DomainException):
    """Exception raised when a diagnosis run fails."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


@dataclass
class RunDiagnoseRequest:
    """Request for one diagnosis run.

    Failures are edge ids or "a-b" label pairs; with `asymmetric` also
    "a>b" for a link failed in one direction only. `walk` overrides the
    synthesized ring with a sequence of switch labels.
    """

    topology: str
    failures: List[str] = field(default_factory=list)
    domain: List[str] = field(default_factory=list)
    controller: str = field(default_factory=lambda: settings.default_controller)
    strategy: Strategy = Strategy.SEQUENTIAL
    m: int = 1
    inject: Optional[int] = None
    walk: Optional[List[str]] = None
    asymmetric: bool = False
    tau_us: Optional[float] = None
    exact_matching: Optional[bool] = None
    observer: Optional[ProbeObserver] = None


@dataclass
class RunDiagnoseResponse:
    """Report of the campaign and the ring it ran on."""

    topology: Topology
    deployment: RingDeployment
    domain: ControlDomain
    failures: FailureState
    report: DiagnosisReport

    def to_dict(self) -> Dict[str, Any]:
        topology = self.topology
        metrics = self.deployment.metrics
        failed: List[str] = [
            _edge_label(topology, edge_id) for edge_id in sorted(self.failures.edges)
        ]
        failed.extend(_arc_label(topology, arc) for arc in sorted(self.failures.arcs))
        payload = {
            "topology": topology.name,
            "ring": {
                **metrics.to_dict(),
                "switches": [topology.label(s) for s in self.deployment.walk.switches()],
            },
            "static_rules": self.deployment.static_rules,
            "controller": self.domain.controller,
            "domain": sorted(topology.label(s) for s in self.domain.switches),
            "failed": failed,
            "located_links": [
                _edge_label(topology, edge_id) for edge_id in sorted(self.report.located)
            ],
        }
        payload.update(self.report.to_dict())
        return payload


class RunDiagnoseUseCase:
    """Use case for diagnosing failures on one topology."""

    def __init__(self, topology_repository: ITopologyRepository):
        self.topology_repository = topology_repository

    async def execute(self, request: RunDiagnoseRequest) -> RunDiagnoseResponse:
        """Execute the diagnosis run."""
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
                tau_us=request.tau_us,
                exact_matching=request.exact_matching,
            )

            failures = parse_failures(topology, request.failures, request.asymmetric)
            set_failures(deployment.fabric, failures)

            switches = [topology.switch_by_label(label) for label in request.domain]
            domain = ControlDomain.of(
                switches or [deployment.walk.start], request.controller
            )
            view = deployment.view(domain)

            fabric = deployment.fabric
            strategy = request.strategy
            if strategy is Strategy.VERIFY:
                report = verify(fabric, view, request.inject, request.observer)
            elif strategy is Strategy.SEQUENTIAL:
                report = locate_single(fabric, view, request.inject, request.observer)
            elif strategy is Strategy.PARALLEL:
                report = locate_parallel(
                    fabric, view, request.inject, request.m, request.observer
                )
            elif strategy is Strategy.BIDIRECTIONAL:
                report = locate_bidirectional(
                    fabric, view, request.inject, request.m, request.observer
                )
            else:
                report = locate_multi(fabric, view, observer=request.observer)

            logger.info(
                f"{topology.name}: {report.verdict.value} after {report.messages} "
                f"messages, located {sorted(report.located)}"
            )
            return RunDiagnoseResponse(
                topology=topology,
                deployment=deployment,
                domain=domain,
                failures=failures,
                report=report,
            )

        except DomainException:
            raise
        except Exception as e:
            raise RunDiagnoseUseCaseException(f"Failed to run diagnosis: {str(e)}")

    def _validate_request(self, request: RunDiagnoseRequest) -> None:
        if not request.topology:
            raise RunDiagnoseUseCaseException("Topology is required")
        if request.m < 1:
            raise RunDiagnoseUseCaseException("Parallelism m must be at least 1")
        if request.inject is not None and request.strategy is Strategy.MULTI:
            raise RunDiagnoseUseCaseException(
                "Multi-failure search injects at every domain position; drop --inject"
            )


def parse_failures(
    topology: Topology, tokens: List[str], asymmetric: bool
) -> FailureState:
    """Failure state from edge ids, "a-b" links and (asymmetric) "a>b" arcs."""
    edges: List[int] = []
    arcs: List[Arc] = []
    for token in tokens:
        token = token.strip()
        if token.isdigit():
            edge_id = int(token)
            if edge_id >= topology.num_edges:
                raise ValidationException(
                    f"No link with id {edge_id} in {topology.name}",
                    field="fail",
                    value=token,
                )
            edges.append(edge_id)
        elif ">" in token:
            if not asymmetric:
                raise ValidationException(
                    "One-way failures need asymmetric mode", field="fail", value=token
                )
            tail, head = _split_labels(topology, token, ">")
            arcs.append(_lowest_edge(topology, tail, head, token).arc_from(tail))
        else:
            u, v = _split_labels(topology, token, "-")
            edges.append(_lowest_edge(topology, u, v, token).id)

    if not asymmetric:
        return FailureState.symmetric(edges)
    both_ways = as_asymmetric(FailureState.symmetric(edges), topology)
    return FailureState.asymmetric(list(both_ways.arcs) + arcs)


def _split_labels(
    topology: Topology, token: str, separator: str
) -> Tuple[SwitchId, SwitchId]:
    # labels may contain the separator themselves, so try every split point
    for index, char in enumerate(token):
        if char != separator:
            continue
        left, right = token[:index], token[index + 1 :]
        if left in topology.labels and right in topology.labels:
            return topology.switch_by_label(left), topology.switch_by_label(right)
    raise ValidationException(
        f"Cannot read '{token}' as two switch labels of {topology.name}",
        field="fail",
        value=token,
    )


def _lowest_edge(topology: Topology, u: SwitchId, v: SwitchId, token: str) -> Edge:
    candidates = topology.edges_between(u, v)
    if not candidates:
        raise ValidationException(
            f"No link between {topology.label(u)} and {topology.label(v)}",
            field="fail",
            value=token,
        )
    return min(candidates, key=lambda edge: edge.id)


def _edge_label(topology: Topology, edge_id: int) -> str:
    edge = topology.edge(edge_id)
    return f"{topology.label(edge.u)}-{topology.label(edge.v)}"


def _arc_label(topology: Topology, arc: Arc) -> str:
    return f"{topology.label(arc.tail)}>{topology.label(arc.head)}"
