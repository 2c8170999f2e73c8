"""
File: topology_repository.py
Description: Topology repository port interface
Author: RingDiag Team
Created: 2025-06-08
"""

from abc import ABC, abstractmethod
from typing import List

from src.core.domain.entities import Topology


class ITopologyRepository(ABC):
    """Port interface for a corpus of topologies."""

    @abstractmethod
    async def list_names(self) -> List[str]:
        """List topology names in a stable order."""
        pass

    @abstractmethod
    async def load(self, name: str) -> Topology:
        """Load one topology by name.

        Raises:
            TopologySourceException: when the source is missing or unreadable
        """
        pass
