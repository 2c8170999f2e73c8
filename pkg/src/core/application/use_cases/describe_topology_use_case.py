"""
File: describe_topology_use_case.py
Description: Summary of one topology file
Author: RingDiag Team
Created: 2025-06-10
"""

from dataclasses import dataclass
from typing import Any, Dict

from src.core.domain.exceptions import DomainException
from src.core.domain.services import is_eulerian, odd_vertices, topology_summary
from src.core.ports.repositories import ITopologyRepository


class DescribeTopologyUseCaseException(DomainException):
    """Exception raised when a topology cannot be summarised."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


@dataclass
class DescribeTopologyRequest:
    topology: str


@dataclass
class DescribeTopologyResponse:
    summary: Dict[str, Any]


class DescribeTopologyUseCase:
    """Use case for summarising a topology."""

    def __init__(self, topology_repository: ITopologyRepository):
        self.topology_repository = topology_repository

    async def execute(self, request: DescribeTopologyRequest) -> DescribeTopologyResponse:
        """Execute the topology summary."""
        try:
            if not request.topology:
                raise DescribeTopologyUseCaseException("Topology is required")

            topology = await self.topology_repository.load(request.topology)
            summary = topology_summary(topology)
            summary["odd_switches"] = [topology.label(s) for s in odd_vertices(topology)]
            summary["eulerian"] = is_eulerian(topology)
            return DescribeTopologyResponse(summary=summary)

        except DomainException:
            raise
        except Exception as e:
            raise DescribeTopologyUseCaseException(
                f"Failed to describe topology: {str(e)}"
            )
