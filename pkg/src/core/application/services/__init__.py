"""
File: __init__.py
Description: Application services shared by the use cases
Author: RingDiag Team
Created: 2025-06-09
"""

from .corpus_runner import load_corpus, map_topologies, unsuitable_reason
from .ring_pipeline import RingDeployment, deploy_ring, synthesize_ring

__all__ = [
    "RingDeployment",
    "deploy_ring",
    "synthesize_ring",
    "load_corpus",
    "map_topologies",
    "unsuitable_reason",
]
