"""
File: diagnosis_report.py
Description: Outcomes of probe campaigns and analytic cost bounds
Author: RingDiag Team
Created: 2025-06-06
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from ..exceptions.base import DomainException
from ..value_objects import Arc, EdgeId, FailureMode


class InvalidReportException(DomainException):
    """Exception raised when a report contradicts its verdict."""

    pass


class Verdict(str, Enum):
    HEALTHY = "healthy"
    FAILED = "failed"


class Strategy(str, Enum):
    VERIFY = "verify"
    SEQUENTIAL = "sequential"
    PARALLEL = "parallel"
    BIDIRECTIONAL = "bidirectional"
    MULTI = "multi"


class SearchDirection(str, Enum):
    CLOCKWISE = "cw"
    COUNTER_CLOCKWISE = "ccw"


@dataclass(frozen=True)
class ProbeRecord:
    """One probe sent by the controller.

    `path_length` is the designed round trip; the controller waits that
    long for a lost probe, so it is what the probe costs in time.
    """

    target: Optional[int]
    direction: SearchDirection
    returned: bool
    hops: int
    path_length: int
    batch: int
    injected_at: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "direction": self.direction.value,
            "returned": self.returned,
            "hops": self.hops,
            "path_length": self.path_length,
            "batch": self.batch,
            "injected_at": self.injected_at,
        }


@dataclass(frozen=True, order=True)
class LocatedFailure:
    """A failed link found by a search in one direction."""

    edge: EdgeId
    arc: Arc
    direction: SearchDirection
    injected_at: int
    suspects: Tuple[Arc, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "edge_id": self.edge,
            "arc": self.arc.to_dict(),
            "direction": self.direction.value,
            "injected_at": self.injected_at,
        }
        if self.suspects:
            payload["suspects"] = [arc.to_dict() for arc in self.suspects]
        return payload


@dataclass(frozen=True)
class DiagnosisReport:
    verdict: Verdict
    strategy: Strategy
    messages: int
    total_hops: int
    latency_us: float
    located: FrozenSet[EdgeId] = field(default_factory=frozenset)
    findings: Tuple[LocatedFailure, ...] = ()
    probes: Tuple[ProbeRecord, ...] = ()
    mode: FailureMode = FailureMode.SYMMETRIC
    m: int = 1

    def __post_init__(self):
        """Validate report after initialization."""
        object.__setattr__(self, "located", frozenset(self.located))
        object.__setattr__(self, "findings", tuple(self.findings))
        object.__setattr__(self, "probes", tuple(self.probes))
        if self.verdict is Verdict.HEALTHY and self.located:
            raise InvalidReportException("A healthy verdict cannot locate failures")
        if self.messages < 1:
            raise InvalidReportException("A diagnosis sends at least one message")

    @property
    def located_arcs(self) -> FrozenSet[Arc]:
        return frozenset(finding.arc for finding in self.findings)

    @property
    def strategy_label(self) -> str:
        if self.strategy is Strategy.PARALLEL or (
            self.strategy is Strategy.BIDIRECTIONAL and self.m > 1
        ):
            return f"{self.strategy.value}({self.m})"
        return self.strategy.value

    def to_dict(self) -> Dict[str, Any]:
        located: List[Any]
        if self.mode is FailureMode.ASYMMETRIC:
            located = [str(arc) for arc in sorted(self.located_arcs)]
        else:
            located = sorted(self.located)
        return {
            "verdict": self.verdict.value,
            "located": located,
            "findings": [finding.to_dict() for finding in sorted(set(self.findings))],
            "messages": self.messages,
            "total_hops": self.total_hops,
            "latency_us": self.latency_us,
            "strategy": self.strategy_label,
            "probes": [probe.to_dict() for probe in self.probes],
        }


@dataclass(frozen=True)
class BoundsReport:
    """Analytic rule, message and latency figures for a ring of length L."""

    length: int
    kappa: int
    m: int
    tau_us: float
    bidirectional: bool
    iterations: int
    static_rules: int
    messages: int
    latency_lower_us: float
    latency_upper_us: float
    sequential_upper_us: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "L": self.length,
            "kappa": self.kappa,
            "m": self.m,
            "tau_us": self.tau_us,
            "bidirectional": self.bidirectional,
            "iterations": self.iterations,
            "static_rules": self.static_rules,
            "messages": self.messages,
            "latency_lower_us": self.latency_lower_us,
            "latency_upper_us": self.latency_upper_us,
            "sequential_upper_us": self.sequential_upper_us,
        }
