"""
File: __init__.py
Description: Domain entities module initialization
Author: RingDiag Team
Created: 2025-06-02
"""

from .diagnosis_report import (
    BoundsReport,
    DiagnosisReport,
    LocatedFailure,
    ProbeRecord,
    SearchDirection,
    Strategy,
    Verdict,
)
from .experiment_records import MultifailRecord, RatioRecord, SkippedTopology
from .fabric import Fabric, FabricConfigurationException
from .probe import DropReason, HopEvent, InjectionPoint, ProbeOutcome, TraceHop
from .rule import (
    Action,
    ActionType,
    InvalidRuleException,
    Match,
    Priority,
    Rule,
    RuleKind,
    RuleSet,
)
from .topology import InvalidTopologyException, Topology
from .walk import CoverMode, InvalidWalkException, Walk, WalkMetrics

__all__ = [
    "Topology",
    "InvalidTopologyException",
    "Walk",
    "WalkMetrics",
    "CoverMode",
    "InvalidWalkException",
    "Action",
    "ActionType",
    "Match",
    "Priority",
    "Rule",
    "RuleKind",
    "RuleSet",
    "InvalidRuleException",
    "Fabric",
    "FabricConfigurationException",
    "DropReason",
    "HopEvent",
    "InjectionPoint",
    "ProbeOutcome",
    "TraceHop",
    "BoundsReport",
    "DiagnosisReport",
    "LocatedFailure",
    "ProbeRecord",
    "SearchDirection",
    "Strategy",
    "Verdict",
    "RatioRecord",
    "MultifailRecord",
    "SkippedTopology",
]
