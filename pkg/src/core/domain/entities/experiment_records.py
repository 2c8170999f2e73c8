"""
File: experiment_records.py
Description: Per-topology records produced by the evaluation studies
Author: RingDiag Team
Created: 2025-06-08
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict

from ..exceptions.base import DomainException


class InvalidRecordException(DomainException):
    """Exception raised when a study record breaks its invariant."""

    pass


@dataclass(frozen=True)
class RatioRecord:
    """Static rule cost of the improved ring against the |E| + |B| bound."""

    topology: str
    switches: int
    edges: int
    bridges: int
    length: int
    kappa: int
    rule_cost: int
    lower_bound: int

    def __post_init__(self):
        if self.rule_cost < self.lower_bound:
            raise InvalidRecordException(
                f"{self.topology}: rule cost {self.rule_cost} below lower bound "
                f"{self.lower_bound}"
            )

    @property
    def ratio(self) -> float:
        return self.rule_cost / self.lower_bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "topology": self.topology,
            "switches": self.switches,
            "edges": self.edges,
            "bridges": self.bridges,
            "L_opt": self.length,
            "kappa": self.kappa,
            "rule_cost": self.rule_cost,
            "lower_bound": self.lower_bound,
            "ratio": round(self.ratio, 6),
        }


@dataclass(frozen=True)
class MultifailRecord:
    """Average number of located links over all failure patterns and
    single-switch control domains of one topology."""

    topology: str
    edges: int
    k: int
    patterns: int
    domains: int
    trials: int
    located_total: int
    min_located: int
    max_located: int
    max_beta: int
    sampled: bool = False

    @property
    def average(self) -> float:
        return self.located_total / self.trials if self.trials else 0.0

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["average"] = round(self.average, 6)
        return payload


@dataclass(frozen=True)
class SkippedTopology:
    topology: str
    reason: str
    error: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
