"""
File: __init__.py
Description: Use cases of the evaluation harness
Author: RingDiag Team
Created: 2025-06-09
"""

from .compile_rules_use_case import (
    CompileRulesRequest,
    CompileRulesResponse,
    CompileRulesUseCase,
    CompileRulesUseCaseException,
    RuleRow,
)
from .describe_topology_use_case import (
    DescribeTopologyRequest,
    DescribeTopologyResponse,
    DescribeTopologyUseCase,
    DescribeTopologyUseCaseException,
)
from .run_bounds_use_case import (
    TABLE_LENGTH,
    TABLE_PARALLELISM,
    BoundsRow,
    RunBoundsRequest,
    RunBoundsResponse,
    RunBoundsUseCase,
    RunBoundsUseCaseException,
)
from .run_diagnose_use_case import (
    RunDiagnoseRequest,
    RunDiagnoseResponse,
    RunDiagnoseUseCase,
    RunDiagnoseUseCaseException,
    parse_failures,
)
from .run_multifail_use_case import (
    RunMultifailRequest,
    RunMultifailResponse,
    RunMultifailUseCase,
    RunMultifailUseCaseException,
    failure_patterns,
    multifail_record,
)
from .run_ratio_use_case import (
    RunRatioRequest,
    RunRatioResponse,
    RunRatioUseCase,
    RunRatioUseCaseException,
    ratio_record,
)

__all__ = [
    "CompileRulesRequest",
    "CompileRulesResponse",
    "CompileRulesUseCase",
    "CompileRulesUseCaseException",
    "RuleRow",
    "DescribeTopologyRequest",
    "DescribeTopologyResponse",
    "DescribeTopologyUseCase",
    "DescribeTopologyUseCaseException",
    "TABLE_LENGTH",
    "TABLE_PARALLELISM",
    "BoundsRow",
    "RunBoundsRequest",
    "RunBoundsResponse",
    "RunBoundsUseCase",
    "RunBoundsUseCaseException",
    "RunDiagnoseRequest",
    "RunDiagnoseResponse",
    "RunDiagnoseUseCase",
    "RunDiagnoseUseCaseException",
    "parse_failures",
    "RunMultifailRequest",
    "RunMultifailResponse",
    "RunMultifailUseCase",
    "RunMultifailUseCaseException",
    "failure_patterns",
    "multifail_record",
    "RunRatioRequest",
    "RunRatioResponse",
    "RunRatioUseCase",
    "RunRatioUseCaseException",
    "ratio_record",
]
