"""
File: forwarding_simulator.py
Description: Deterministic forwarding-plane emulation of probe packets
Author: RingDiag Team
Created: 2025-06-05
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Union

from src.config.settings import settings

from ..entities.fabric import Fabric, FabricConfigurationException
from ..entities.probe import DropReason, HopEvent, InjectionPoint, ProbeOutcome, TraceHop
from ..entities.rule import ActionType, Rule, RuleKind, RuleSet
from ..entities.topology import Topology
from ..value_objects import Arc, FailureMode, FailureState, Header, SwitchId

logger = logging.getLogger(__name__)


def build_fabric(
    topology: Topology, sets: Sequence[RuleSet], tau_us: Optional[float] = None
) -> Fabric:
    """Install rule sets into per-switch tables sorted by priority.

    Rules referencing unknown switches or links, duplicated rule ids and
    identical entries are rejected.
    """
    tau = tau_us if tau_us is not None else settings.tau_us
    if tau <= 0:
        raise FabricConfigurationException("Switching delay tau must be positive")

    tables: Dict[SwitchId, List[Rule]] = {s: [] for s in topology.switches}
    seen_ids: Set[str] = set()
    seen_entries: Set[tuple] = set()
    for rule_set in sets:
        for rule in rule_set.rules:
            _check_references(topology, rule)
            if rule.rule_id in seen_ids:
                raise FabricConfigurationException(f"Duplicate rule id {rule.rule_id}")
            if rule.signature() in seen_entries:
                raise FabricConfigurationException(
                    f"Rule {rule.rule_id} duplicates an installed entry"
                )
            seen_ids.add(rule.rule_id)
            seen_entries.add(rule.signature())
            tables[rule.switch].append(rule)

    for table in tables.values():
        table.sort(key=lambda rule: -rule.priority)

    ring_length = max((s.ring_length for s in sets), default=0)
    if ring_length == 0:
        ring_length = 2 * topology.num_edges
    fabric = Fabric(
        topology=topology,
        tables=tables,
        tau_us=tau,
        hop_budget=4 * ring_length + 4,
        installed_kinds={s.kind for s in sets},
    )
    logger.debug(
        f"Fabric for {topology.name}: {fabric.rule_count} rules, "
        f"hop budget {fabric.hop_budget}"
    )
    return fabric


def install_rule(fabric: Fabric, rule: Rule) -> None:
    """Dynamic installation, used for loopback rules."""
    _check_references(fabric.topology, rule)
    fabric.install(rule)


def set_failures(fabric: Fabric, failures: FailureState) -> Fabric:
    """Replace the failure state after checking it names existing links."""
    topology = fabric.topology
    for edge_id in failures.edges:
        if edge_id < 0 or edge_id >= topology.num_edges:
            raise FabricConfigurationException(f"Unknown failed edge {edge_id}")
    for arc in failures.arcs:
        if not topology.has_arc(arc):
            raise FabricConfigurationException(f"Unknown failed arc {arc}")
    fabric.failures = failures
    return fabric


def inject(
    fabric: Fabric,
    header: Header,
    at: Union[SwitchId, InjectionPoint],
) -> ProbeOutcome:
    """Forward a probe from the controller until it returns or drops.

    Each switch applies the first matching rule of its table. Loopback rules
    are not consulted on the first lookup because the probe has not yet
    left the controller's switch. A send-back on that first lookup returns
    the probe directly.
    """
    point = at if isinstance(at, InjectionPoint) else InjectionPoint(switch=at)
    if not fabric.topology.has_switch(point.switch):
        raise FabricConfigurationException(f"Cannot inject at unknown switch {point.switch}")

    switch = point.switch
    in_arc = point.in_arc
    current = header
    hops = 0
    trace: List[TraceHop] = []
    first_lookup = True

    while True:
        rule = _first_match(fabric.table(switch), current, in_arc, first_lookup)
        if rule is None:
            trace.append(TraceHop(switch, None, HopEvent.DROP))
            return ProbeOutcome(False, hops, trace, DropReason.NO_MATCH)

        out_arc: Optional[Arc] = None
        to_controller = False
        for action in rule.actions:
            if action.type is ActionType.SET_VLAN:
                current = current.with_changes(vlan=action.value)
            elif action.type is ActionType.SET_FLOW:
                current = current.with_changes(flow=action.value)
            elif action.type is ActionType.DEC_TTL and current.ttl is not None:
                current = current.with_changes(ttl=max(current.ttl - 1, 0))
            elif action.type is ActionType.FORWARD:
                out_arc = action.value  # type: ignore[assignment]
            elif action.type is ActionType.SEND_BACK_IN_PORT:
                if first_lookup or in_arc is None:
                    to_controller = True
                else:
                    out_arc = in_arc.reversed()
            elif action.type is ActionType.TO_CONTROLLER:
                to_controller = True

        if to_controller:
            trace.append(TraceHop(switch, rule.rule_id, HopEvent.TO_CONTROLLER))
            return ProbeOutcome(True, hops, trace)
        if out_arc is None:
            trace.append(TraceHop(switch, rule.rule_id, HopEvent.DROP))
            return ProbeOutcome(False, hops, trace, DropReason.NO_MATCH)
        if fabric.failures.blocks(out_arc):
            trace.append(TraceHop(switch, rule.rule_id, HopEvent.DROP, out_arc))
            return ProbeOutcome(False, hops, trace, DropReason.FAILED_LINK)
        if hops >= fabric.hop_budget or current.ttl == 0:
            trace.append(TraceHop(switch, rule.rule_id, HopEvent.DROP, out_arc))
            return ProbeOutcome(False, hops, trace, DropReason.TTL_EXHAUSTED)

        trace.append(TraceHop(switch, rule.rule_id, HopEvent.FORWARD, out_arc))
        hops += 1
        if current.ttl is not None:
            current = current.with_changes(ttl=current.ttl - 1)
        switch = out_arc.head
        in_arc = out_arc
        first_lookup = False


def latency_of(
    outcomes: Iterable[ProbeOutcome], parallel: bool, tau_us: Optional[float] = None
) -> float:
    """tau x max hops for a parallel batch, tau x total hops otherwise."""
    tau = tau_us if tau_us is not None else settings.tau_us
    hops = [outcome.hops for outcome in outcomes]
    if not hops:
        return 0.0
    return tau * (max(hops) if parallel else sum(hops))


def as_asymmetric(failures: FailureState, topology: Topology) -> FailureState:
    """The same failures expressed as failed arcs."""
    if failures.mode is FailureMode.ASYMMETRIC:
        return failures
    return FailureState.asymmetric(
        arc for edge_id in failures.edges for arc in topology.edge(edge_id).arcs()
    )


def _first_match(
    table: Sequence[Rule], header: Header, in_arc: Optional[Arc], first_lookup: bool
) -> Optional[Rule]:
    for rule in table:
        if first_lookup and rule.priority >= RuleKind.LOOPBACK.priority:
            continue
        if rule.match.matches(header, in_arc):
            return rule
    return None


def _check_references(topology: Topology, rule: Rule) -> None:
    if not topology.has_switch(rule.switch):
        raise FabricConfigurationException(
            f"Rule {rule.rule_id} targets unknown switch {rule.switch}"
        )
    for arc in (rule.out_arc, rule.match.in_arc):
        if arc is not None and not topology.has_arc(arc):
            raise FabricConfigurationException(
                f"Rule {rule.rule_id} references unknown link {arc}"
            )
