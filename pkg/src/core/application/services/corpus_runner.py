"""
File: corpus_runner.py
Description: Runs one per-topology computation over a corpus, optionally in
worker processes
Author: RingDiag Team
Created: 2025-06-09
"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from src.core.domain.entities import SkippedTopology, Topology
from src.core.domain.exceptions import DomainException
from src.core.domain.services import is_connected
from src.core.ports.repositories import ITopologyRepository

logger = logging.getLogger(__name__)

T = TypeVar("T")


async def map_topologies(
    func: Callable[[Topology], T], topologies: Sequence[Topology], workers: int = 1
) -> List[T]:
    """Apply `func` to every topology; results keep the input order.

    With more than one worker `func` must be picklable (a module-level
    function or a functools.partial of one).
    """
    if workers <= 1 or len(topologies) <= 1:
        results = []
        for topology in topologies:
            logger.info(f"Processing {topology.name}")
            results.append(func(topology))
        return results

    loop = asyncio.get_running_loop()
    logger.info(f"Processing {len(topologies)} topologies on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, func, topology) for topology in topologies]
        return list(await asyncio.gather(*futures))


async def load_corpus(
    repository: ITopologyRepository,
) -> Tuple[List[Topology], List[SkippedTopology]]:
    """Every readable topology of the corpus; unreadable files become skips."""
    topologies: List[Topology] = []
    skipped: List[SkippedTopology] = []
    for name in await repository.list_names():
        try:
            topologies.append(await repository.load(name))
        except DomainException as e:
            logger.warning(f"Skipping {name}: {e.message}")
            skipped.append(SkippedTopology(topology=name, reason=e.message, error=True))
    return topologies, skipped


def unsuitable_reason(topology: Topology) -> Optional[str]:
    """Why a topology cannot carry a ring experiment, or None."""
    if topology.num_edges < 2:
        return f"only {topology.num_edges} link(s)"
    if not is_connected(topology):
        return "disconnected"
    return None
