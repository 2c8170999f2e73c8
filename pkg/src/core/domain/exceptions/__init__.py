"""
File: __init__.py
Description: Domain exception hierarchy
Author: RingDiag Team
Created: 2025-06-02
"""

from .base import (
    BusinessRuleViolationException,
    DomainException,
    InfrastructureException,
    PreconditionException,
    ValidationException,
)
from .infrastructure import (
    ConfigurationException,
    EmptyTopologyException,
    TopologyParseException,
    TopologySourceException,
    UnsupportedTopologyFormatException,
)

__all__ = [
    "DomainException",
    "ValidationException",
    "PreconditionException",
    "BusinessRuleViolationException",
    "InfrastructureException",
    "ConfigurationException",
    "TopologySourceException",
    "TopologyParseException",
    "UnsupportedTopologyFormatException",
    "EmptyTopologyException",
]
