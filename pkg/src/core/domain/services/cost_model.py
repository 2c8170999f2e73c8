"""
File: cost_model.py
Description: Closed-form rule, message and latency bounds of ring diagnosis
Author: RingDiag Team
Created: 2025-06-06
"""

import math
from typing import Optional, Tuple

from src.config.settings import settings

from ..entities.diagnosis_report import BoundsReport
from ..exceptions.base import ValidationException


def ceil_log(value: int, base: int) -> int:
    """Smallest c with base**c >= value, in exact integer arithmetic."""
    if base < 2:
        raise ValidationException("Logarithm base must be >= 2", field="base", value=base)
    exponent, reach = 0, 1
    while reach < value:
        reach *= base
        exponent += 1
    return exponent


def cost_bounds(
    length: int,
    kappa: int = 0,
    m: int = 1,
    tau_us: Optional[float] = None,
    bidirectional: bool = False,
) -> BoundsReport:
    """Static rules, message bound and latency envelope for a ring of `length`.

    The sequential upper bound uses log2 of the ring length; the m-ary
    bound uses the integer iteration count.
    """
    tau = tau_us if tau_us is not None else settings.tau_us
    if length < 2:
        raise ValidationException("Ring length must be at least 2", field="L", value=length)
    if m < 1:
        raise ValidationException("Parallelism m must be >= 1", field="m", value=m)
    if kappa < 0 or kappa >= length:
        raise ValidationException(
            "Duplicate count must lie in [0, L)", field="kappa", value=kappa
        )
    if tau <= 0:
        raise ValidationException("tau must be positive", field="tau_us", value=tau)

    iterations = ceil_log(length, m + 1)
    inner = length * iterations if bidirectional else 2 * length * iterations
    return BoundsReport(
        length=length,
        kappa=kappa,
        m=m,
        tau_us=tau,
        bidirectional=bidirectional,
        iterations=iterations,
        static_rules=(4 if bidirectional else 3) * length - 2 * kappa,
        messages=1 + m * iterations,
        latency_lower_us=(3 * length - 2) * tau,
        latency_upper_us=(length + inner) * tau,
        sequential_upper_us=(length * (2 * math.log2(length) - 1) + 2) * tau,
    )


def bisection_hop_envelope(length: int) -> Tuple[int, int]:
    """Hop totals any single-failure bisection campaign stays within.

    Counts the verification lap plus every probe round trip. For a ring
    length that is a power of two it equals (3L - 2, L(2 log2 L - 1) + 2).
    """
    if length < 2:
        raise ValidationException("Ring length must be at least 2", field="L", value=length)
    floor_power = 1 << (length.bit_length() - 1)
    rounds = ceil_log(length, 2)
    return 3 * floor_power - 2, length * (2 * rounds - 1) + 2


def significant(value: float, digits: int = 3) -> float:
    """Round to `digits` significant figures for presentation."""
    if value == 0:
        return 0.0
    return round(value, digits - 1 - int(math.floor(math.log10(abs(value)))))
