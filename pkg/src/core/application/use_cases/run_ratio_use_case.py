"""
File: run_ratio_use_case.py
Description: Static rule cost of the improved ring against the |E| + |B| bound
over a topology corpus
Author: RingDiag Team
Created: 2025-06-09
"""

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Union

from src.core.application.services import (
    load_corpus,
    map_topologies,
    synthesize_ring,
    unsuitable_reason,
)
from src.core.domain.entities import RatioRecord, SkippedTopology, Topology
from src.core.domain.exceptions import DomainException
from src.core.domain.services import find_bridges, walk_metrics
from src.core.ports.repositories import ITopologyRepository

logger = logging.getLogger(__name__)


class RunRatioUseCaseException(DomainException):
    """Exception raised when the ratio study cannot run."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


@dataclass
class RunRatioRequest:
    """Request for the ratio study."""

    exact_matching: Optional[bool] = None
    workers: int = 1


@dataclass
class RunRatioResponse:
    """Per-topology ratios sorted by topology name."""

    records: List[RatioRecord]
    skipped: List[SkippedTopology] = field(default_factory=list)

    @property
    def optimal_fraction(self) -> float:
        if not self.records:
            return 0.0
        return sum(1 for r in self.records if r.rule_cost == r.lower_bound) / len(
            self.records
        )

    @property
    def max_ratio(self) -> float:
        return max((r.ratio for r in self.records), default=0.0)

    def summary(self) -> Dict[str, Any]:
        return {
            "topologies": len(self.records),
            "skipped": len(self.skipped),
            "optimal_fraction": round(self.optimal_fraction, 6),
            "max_ratio": round(self.max_ratio, 6),
        }


def ratio_record(
    topology: Topology, exact_matching: Optional[bool] = None
) -> Union[RatioRecord, SkippedTopology]:
    """Ratio record of one topology, or why it was skipped."""
    reason = unsuitable_reason(topology)
    if reason is not None:
        return SkippedTopology(topology=topology.name, reason=reason)
    try:
        walk = synthesize_ring(topology, exact_matching=exact_matching)
        metrics = walk_metrics(walk)
        bridges = len(find_bridges(topology))
        return RatioRecord(
            topology=topology.name,
            switches=topology.num_switches,
            edges=topology.num_edges,
            bridges=bridges,
            length=metrics.length,
            kappa=metrics.kappa,
            rule_cost=metrics.rule_cost,
            lower_bound=topology.num_edges + bridges,
        )
    except DomainException as e:
        return SkippedTopology(topology=topology.name, reason=e.message, error=True)


class RunRatioUseCase:
    """Use case for the rule cost ratio study."""

    def __init__(self, topology_repository: ITopologyRepository):
        self.topology_repository = topology_repository

    async def execute(self, request: RunRatioRequest) -> RunRatioResponse:
        """Execute the ratio study."""
        try:
            self._validate_request(request)

            topologies, skipped = await load_corpus(self.topology_repository)
            results = await map_topologies(
                partial(ratio_record, exact_matching=request.exact_matching),
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

            response = RunRatioResponse(
                records=sorted(records, key=lambda r: r.topology),
                skipped=sorted(skipped, key=lambda s: s.topology),
            )
            logger.info(
                f"Ratio study: {len(records)} topologies, "
                f"{response.optimal_fraction:.1%} optimal, max ratio {response.max_ratio:.3f}"
            )
            return response

        except DomainException:
            raise
        except Exception as e:
            raise RunRatioUseCaseException(f"Failed to run ratio study: {str(e)}")

    def _validate_request(self, request: RunRatioRequest) -> None:
        if request.workers < 1:
            raise RunRatioUseCaseException("Workers must be at least 1")
