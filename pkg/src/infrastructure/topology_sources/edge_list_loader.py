"""
File: edge_list_loader.py
Description: Plain "u v" edge-list topology loader
Author: RingDiag Team
Created: 2025-06-08
"""

import logging
from typing import Dict, List, Optional, Tuple

from src.core.domain.entities import Topology
from src.core.domain.exceptions import EmptyTopologyException, TopologyParseException

logger = logging.getLogger(__name__)


def load_edge_list(text: str, name: str = "edges", source: Optional[str] = None) -> Topology:
    """One link per line as two node labels; '#' starts a comment.

    Switch ids follow the first appearance of each label.
    """
    index: Dict[str, int] = {}
    pairs: List[Tuple[int, int]] = []
    self_loops = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise TopologyParseException(
                f"Line {number}: expected 'u v', got {raw.strip()!r}", source
            )
        if tokens[0] == tokens[1]:
            self_loops += 1
            continue
        u, v = (index.setdefault(token, len(index)) for token in tokens)
        pairs.append((u, v))

    if not pairs:
        raise EmptyTopologyException(f"Edge list {name} has no links", source)
    if self_loops:
        logger.warning(f"Dropped {self_loops} self-loop(s) from {name}")

    labels = sorted(index, key=index.get)  # type: ignore[arg-type]
    return Topology.from_edge_pairs(
        num_switches=len(labels), pairs=pairs, name=name, labels=labels
    )
