"""
File: __init__.py
Description: Domain services: graph analysis, walk synthesis, rule compilation,
forwarding simulation and diagnosis
Author: RingDiag Team
Created: 2025-06-02
"""

from .cost_model import bisection_hop_envelope, ceil_log, cost_bounds, significant
from .diagnosis_engine import (
    DiagnosisException,
    ProbeObserver,
    RingView,
    locate_bidirectional,
    locate_multi,
    locate_parallel,
    locate_single,
    verify,
)
from .forwarding_simulator import (
    as_asymmetric,
    build_fabric,
    inject,
    install_rule,
    latency_of,
    set_failures,
)
from .rule_compiler import (
    RingProgram,
    RuleCompilationException,
    TagBudgetExceededException,
    compile_bounceback,
    compile_loopback,
    compile_ring,
    compile_walk,
    total_static_rules,
)
from .topology_analysis import (
    TopologyPreconditionException,
    directed_arcs,
    find_bridges,
    is_connected,
    is_eulerian,
    odd_vertices,
    rule_lower_bound,
    topology_summary,
)
from .walk_improvement import improve_walk
from .walk_synthesis import (
    WalkSynthesisException,
    edge_multiplicity,
    euler_cycle_directed,
    reverse_walk,
    solve_cpp,
    validate_walk,
    walk_metrics,
)

__all__ = [
    "is_connected",
    "find_bridges",
    "rule_lower_bound",
    "directed_arcs",
    "odd_vertices",
    "is_eulerian",
    "topology_summary",
    "TopologyPreconditionException",
    "solve_cpp",
    "euler_cycle_directed",
    "walk_metrics",
    "reverse_walk",
    "validate_walk",
    "edge_multiplicity",
    "WalkSynthesisException",
    "improve_walk",
    "RingProgram",
    "compile_walk",
    "compile_ring",
    "compile_bounceback",
    "compile_loopback",
    "total_static_rules",
    "RuleCompilationException",
    "TagBudgetExceededException",
    "build_fabric",
    "set_failures",
    "inject",
    "install_rule",
    "latency_of",
    "as_asymmetric",
    "RingView",
    "verify",
    "locate_single",
    "locate_parallel",
    "locate_bidirectional",
    "locate_multi",
    "DiagnosisException",
    "ProbeObserver",
    "cost_bounds",
    "ceil_log",
    "bisection_hop_envelope",
    "significant",
]
