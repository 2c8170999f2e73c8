"""
File: __init__.py
Description: Repository ports module initialization
Author: RingDiag Team
Created: 2025-06-08
"""

from .topology_repository import ITopologyRepository

__all__ = [
    "ITopologyRepository",
]
