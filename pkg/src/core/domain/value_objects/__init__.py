"""
File: __init__.py
Description: Domain value objects module initialization
Author: RingDiag Team
Created: 2025-06-02
"""

from .control_domain import ControlDomain, InvalidControlDomainException
from .failure_state import FailureMode, FailureState, InvalidFailureStateException
from .header import FlowTag, Header, InvalidHeaderException
from .link import Arc, Edge, EdgeId, InvalidLinkException, SwitchId

__all__ = [
    "Arc",
    "Edge",
    "EdgeId",
    "SwitchId",
    "InvalidLinkException",
    "ControlDomain",
    "InvalidControlDomainException",
    "FlowTag",
    "Header",
    "InvalidHeaderException",
    "FailureMode",
    "FailureState",
    "InvalidFailureStateException",
]
