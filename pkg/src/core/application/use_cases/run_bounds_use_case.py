"""
File: run_bounds_use_case.py
Description: Message and latency bounds of ring diagnosis for given L, tau and m
Author: RingDiag Team
Created: 2025-06-09
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from src.config.settings import settings
from src.core.domain.entities import BoundsReport
from src.core.domain.exceptions import DomainException
from src.core.domain.services import bisection_hop_envelope, cost_bounds, significant

TABLE_LENGTH = 65536
TABLE_PARALLELISM = (1, 2, 3, 4, 40, 255, 65535)


class RunBoundsUseCaseException(DomainException):
    """Exception raised when the bounds table cannot be computed."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


@dataclass
class RunBoundsRequest:
    """Request for the bounds table; no `m` means the reference table."""

    length: int = TABLE_LENGTH
    kappa: int = 0
    m: Optional[List[int]] = None
    tau_us: float = field(default_factory=lambda: settings.tau_us)
    bidirectional: bool = False


@dataclass
class BoundsRow:
    """One row of the bounds table with the latency in seconds."""

    report: BoundsReport

    @property
    def latency_upper_s(self) -> float:
        return significant(self.report.latency_upper_us / 1e6)

    def to_dict(self) -> Dict[str, Any]:
        payload = self.report.to_dict()
        payload["M"] = payload.pop("messages")
        payload["T_UB_s"] = self.latency_upper_s
        return payload


@dataclass
class RunBoundsResponse:
    """Bounds per parallelism degree plus the sequential latency envelope."""

    length: int
    tau_us: float
    rows: List[BoundsRow]
    sandwich_us: Dict[str, float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "L": self.length,
            "tau_us": self.tau_us,
            "rows": [row.to_dict() for row in self.rows],
            "sandwich_us": self.sandwich_us,
        }


class RunBoundsUseCase:
    """Use case for the analytic bounds table."""

    async def execute(self, request: RunBoundsRequest) -> RunBoundsResponse:
        """Execute the bounds computation."""
        try:
            self._validate_request(request)

            degrees: Sequence[int] = request.m or TABLE_PARALLELISM
            rows = [
                BoundsRow(
                    cost_bounds(
                        request.length,
                        kappa=request.kappa,
                        m=m,
                        tau_us=request.tau_us,
                        bidirectional=request.bidirectional,
                    )
                )
                for m in degrees
            ]
            sequential = cost_bounds(request.length, request.kappa, 1, request.tau_us)
            low_hops, high_hops = bisection_hop_envelope(request.length)
            sandwich = {
                "lower": sequential.latency_lower_us,
                "upper": sequential.sequential_upper_us,
                "envelope_lower": low_hops * request.tau_us,
                "envelope_upper": high_hops * request.tau_us,
            }
            return RunBoundsResponse(
                length=request.length,
                tau_us=request.tau_us,
                rows=rows,
                sandwich_us=sandwich,
            )

        except DomainException:
            raise
        except Exception as e:
            raise RunBoundsUseCaseException(f"Failed to compute bounds: {str(e)}")

    def _validate_request(self, request: RunBoundsRequest) -> None:
        if request.length < 2:
            raise RunBoundsUseCaseException("Ring length must be at least 2")
        if request.m is not None and any(m < 1 for m in request.m):
            raise RunBoundsUseCaseException("Parallelism m must be at least 1")
