"""
File: run_multifail_use_case.py
Description: Multi-failure localization study over every k-link failure pattern
and every single-switch control domain
Author: RingDiag Team
Created: 2025-06-09
"""

import logging
import math
import random
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from typing import Iterator, List, Optional, Tuple, Union

from src.config.settings import settings
from src.core.application.services import (
    deploy_ring,
    load_corpus,
    map_topologies,
    unsuitable_reason,
)
from src.core.domain.entities import MultifailRecord, SkippedTopology, Topology
from src.core.domain.exceptions import BusinessRuleViolationException, DomainException
from src.core.domain.services import RingView, locate_multi, set_failures
from src.core.domain.value_objects import ControlDomain, EdgeId, FailureState
from src.core.ports.repositories import ITopologyRepository

logger = logging.getLogger(__name__)

Pattern = Tuple[EdgeId, ...]


class RunMultifailUseCaseException(DomainException):
    """Exception raised when the multi-failure study cannot run."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


@dataclass
class RunMultifailRequest:
    """Request for the multi-failure study."""

    failures_k: int = field(default_factory=lambda: settings.failures_k)
    max_edges: int = field(default_factory=lambda: settings.max_edges)
    cap: int = field(default_factory=lambda: settings.multifail_cap)
    sample_patterns: int = 0
    seed: int = 0
    controller: str = field(default_factory=lambda: settings.default_controller)
    workers: int = 1


@dataclass
class RunMultifailResponse:
    """Per-topology averages sorted by topology name."""

    records: List[MultifailRecord]
    skipped: List[SkippedTopology] = field(default_factory=list)


def failure_patterns(
    num_edges: int, k: int, cap: int, sample: int, seed: int
) -> Tuple[Optional[List[Pattern]], bool]:
    """All k-subsets when there are at most `cap`, else `sample` distinct random
    ones. Returns (None, False) when neither applies."""
    total = math.comb(num_edges, k)
    if total <= cap:
        return list(combinations(range(num_edges), k)), False
    if sample <= 0:
        return None, False
    rng = random.Random(seed)
    chosen = set()
    target = min(sample, total)
    while len(chosen) < target:
        chosen.add(tuple(sorted(rng.sample(range(num_edges), k))))
    return sorted(chosen), True


def _domains(topology: Topology, controller: str) -> Iterator[ControlDomain]:
    for switch in topology.switches:
        yield ControlDomain.of([switch], controller)


def multifail_record(
    topology: Topology,
    k: int,
    max_edges: int,
    cap: int,
    sample: int,
    seed: int,
    controller: str,
) -> Union[MultifailRecord, SkippedTopology]:
    """Locate every failure pattern from every single-switch domain."""
    reason = unsuitable_reason(topology)
    if reason is None and topology.num_edges > max_edges:
        reason = f"{topology.num_edges} links exceed the limit of {max_edges}"
    if reason is None and k > topology.num_edges:
        reason = f"fewer than {k} links"
    if reason is not None:
        return SkippedTopology(topology=topology.name, reason=reason)

    patterns, sampled = failure_patterns(topology.num_edges, k, cap, sample, seed)
    if patterns is None:
        return SkippedTopology(
            topology=topology.name,
            reason=(
                f"{math.comb(topology.num_edges, k)} patterns exceed the cap of {cap}"
            ),
        )

    try:
        deployment = deploy_ring(topology)
        views = [deployment.view(d) for d in _domains(topology, controller)]
        fabric = deployment.fabric

        located_total = 0
        low, high = None, 0
        for pattern in patterns:
            set_failures(fabric, FailureState.symmetric(pattern))
            for view in views:
                located = len(locate_multi(fabric, view).located)
                _check_located(topology, pattern, view, located)
                located_total += located
                low = located if low is None else min(low, located)
                high = max(high, located)
        set_failures(fabric, FailureState.none())
    except DomainException as e:
        return SkippedTopology(topology=topology.name, reason=e.message, error=True)

    record = MultifailRecord(
        topology=topology.name,
        edges=topology.num_edges,
        k=k,
        patterns=len(patterns),
        domains=len(views),
        trials=len(patterns) * len(views),
        located_total=located_total,
        min_located=low or 0,
        max_located=high,
        max_beta=max(view.multiplicity for view in views),
        sampled=sampled,
    )
    logger.info(
        f"{topology.name}: {record.trials} trials, average {record.average:.3f} located"
    )
    return record


def _check_located(
    topology: Topology, pattern: Pattern, view: RingView, located: int
) -> None:
    if not 1 <= located <= 2 * view.multiplicity:
        raise BusinessRuleViolationException(
            f"{topology.name}: pattern {pattern} from switch "
            f"{sorted(view.domain.switches)} located {located} links, expected "
            f"1..{2 * view.multiplicity}",
            rule="located_within_two_beta",
        )


class RunMultifailUseCase:
    """Use case for the multi-failure localization study."""

    def __init__(self, topology_repository: ITopologyRepository):
        self.topology_repository = topology_repository

    async def execute(self, request: RunMultifailRequest) -> RunMultifailResponse:
        """Execute the multi-failure study."""
        try:
            self._validate_request(request)

            topologies, skipped = await load_corpus(self.topology_repository)
            results = await map_topologies(
                partial(
                    multifail_record,
                    k=request.failures_k,
                    max_edges=request.max_edges,
                    cap=request.cap,
                    sample=request.sample_patterns,
                    seed=request.seed,
                    controller=request.controller,
                ),
                topologies,
                request.workers,
            )

            records = []
            for result in results:
                if isinstance(result, SkippedTopology):
                    logger.warning(f"Skipped {result.topology}: {result.reason}")
                    skipped.append(result)
                else:
                    records.append(result)

            return RunMultifailResponse(
                records=sorted(records, key=lambda r: r.topology),
                skipped=sorted(skipped, key=lambda s: s.topology),
            )

        except DomainException:
            raise
        except Exception as e:
            raise RunMultifailUseCaseException(
                f"Failed to run multi-failure study: {str(e)}"
            )

    def _validate_request(self, request: RunMultifailRequest) -> None:
        if request.failures_k < 1:
            raise RunMultifailUseCaseException("Failures k must be at least 1")
        if request.max_edges < 1:
            raise RunMultifailUseCaseException("Max edges must be at least 1")
        if request.cap < 1:
            raise RunMultifailUseCaseException("Pattern cap must be at least 1")
        if request.sample_patterns < 0:
            raise RunMultifailUseCaseException("Sample size cannot be negative")
        if request.workers < 1:
            raise RunMultifailUseCaseException("Workers must be at least 1")
