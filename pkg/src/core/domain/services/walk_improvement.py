"""
File: walk_improvement.py
Description: Walk re-stitching heuristic that raises the number of shared arcs
Author: RingDiag Team
Created: 2025-06-03
"""

import logging
from typing import List, Optional, Sequence, Set, Tuple

from ..entities.topology import Topology
from ..entities.walk import InvalidWalkException, Walk
from ..value_objects import Arc, EdgeId, FailureMode, SwitchId
from .topology_analysis import find_bridges
from .walk_synthesis import validate_walk

logger = logging.getLogger(__name__)


def improve_walk(walk: Walk, topology: Topology) -> Walk:
    """Reverse sub-cycles of a covering walk so more arcs repeat.

    Candidates are non-bridge links traversed in both directions. The pair
    of opposite traversals closest on the ring splits the walk in two; every
    pair of positions visiting the same switch on either side cuts a
    sub-cycle that is reversed and stitched back. The first stitch that
    strictly raises the duplicate count is kept. Candidates that no longer
    appear in both directions are pruned; a candidate is never retried.
    The length and the set of covered links never change.
    """
    if not validate_walk(walk, topology, FailureMode.SYMMETRIC):
        raise InvalidWalkException(
            f"improve_walk needs a closed walk covering every link of {topology.name}"
        )

    bridges = find_bridges(topology)
    arcs = list(walk.arcs)
    kappa = _duplicates(arcs)
    candidates = {e for e in _opposite_traversals(arcs) if e not in bridges}

    while candidates:
        edge_id, first, second = _closest_pair(arcs, candidates)
        candidates.discard(edge_id)

        stitched = _first_improving_stitch(arcs, first, second, kappa)
        if stitched is not None:
            arcs = stitched
            new_kappa = _duplicates(arcs)
            logger.debug(
                f"Reversal around link {edge_id} raised kappa {kappa} -> {new_kappa}"
            )
            kappa = new_kappa

        candidates &= _opposite_traversals(arcs)

    return Walk(
        arcs=tuple(_rotate_to(arcs, walk.start)), start=walk.start, cover=walk.cover
    )


def _duplicates(arcs: Sequence[Arc]) -> int:
    return len(arcs) - len(set(arcs))


def _opposite_traversals(arcs: Sequence[Arc]) -> Set[EdgeId]:
    seen = set(arcs)
    return {arc.edge for arc in seen if arc.reversed() in seen}


def _closest_pair(arcs: Sequence[Arc], candidates: Set[EdgeId]) -> Tuple[EdgeId, int, int]:
    """(edge, a, b) with a < b: opposite traversals at minimum cyclic gap."""
    length = len(arcs)
    best: Optional[Tuple[int, EdgeId, int, int]] = None
    for edge_id in sorted(candidates):
        positions = [i for i, arc in enumerate(arcs) if arc.edge == edge_id]
        for i in positions:
            for j in positions:
                if j <= i or arcs[i] != arcs[j].reversed():
                    continue
                gap = min(j - i, length - (j - i))
                key = (gap, edge_id, i, j)
                if best is None or key < best:
                    best = key
    assert best is not None
    _, edge_id, first, second = best
    return edge_id, first, second


def _first_improving_stitch(
    arcs: List[Arc], first: int, second: int, kappa: int
) -> Optional[List[Arc]]:
    length = len(arcs)
    # Node positions on each side of the pair: W2 = first+1..second,
    # W1 = second+1..first (cyclic). Position p is the tail of arcs[p].
    side_two = list(range(first + 1, second + 1))
    side_one = [(second + 1 + i) % length for i in range((first - second - 1) % length + 1)]

    crossings = sorted(
        (k, l)
        for k in side_one
        for l in side_two
        if arcs[k].tail == arcs[l].tail
    )
    for k, l in crossings:
        stitched = _stitch(arcs, k, l)
        if _duplicates(stitched) > kappa:
            return stitched
    return None


def _stitch(arcs: List[Arc], k: int, l: int) -> List[Arc]:
    """Keep the sub-cycle k..l-1 and append the sub-cycle l..k-1 reversed."""
    kept = _cyclic_slice(arcs, k, l)
    flipped = _cyclic_slice(arcs, l, k)
    return kept + [arc.reversed() for arc in reversed(flipped)]


def _cyclic_slice(arcs: List[Arc], begin: int, end: int) -> List[Arc]:
    if begin < end:
        return arcs[begin:end]
    return arcs[begin:] + arcs[:end]


def _rotate_to(arcs: List[Arc], start: SwitchId) -> List[Arc]:
    for offset, arc in enumerate(arcs):
        if arc.tail == start:
            return arcs[offset:] + arcs[:offset]
    raise InvalidWalkException(f"Start switch {start} left the walk")
