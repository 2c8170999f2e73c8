"""
File: diagnosis_engine.py
Description: Controller-side verification and link failure localization
Author: RingDiag Team
Created: 2025-06-06
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from ..entities.diagnosis_report import (
    DiagnosisReport,
    LocatedFailure,
    ProbeRecord,
    SearchDirection,
    Strategy,
    Verdict,
)
from ..entities.fabric import Fabric
from ..entities.probe import InjectionPoint, ProbeOutcome
from ..entities.rule import RuleKind
from ..entities.walk import Walk
from ..exceptions.base import DomainException
from ..value_objects import Arc, ControlDomain, FailureMode, FlowTag, Header
from .forwarding_simulator import inject, install_rule
from .rule_compiler import RingProgram, compile_loopback

logger = logging.getLogger(__name__)

ProbeObserver = Callable[[ProbeRecord, ProbeOutcome], None]


class DiagnosisException(DomainException):
    """Exception raised when a campaign cannot be run on the given fabric."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message, code="diagnosis_error")


@dataclass(frozen=True)
class RingView:
    """The ring as seen by one controller: where it can inject probes."""

    program: RingProgram
    domain: ControlDomain
    injection_points: Tuple[int, ...]
    multiplicity: int

    @classmethod
    def for_domain(cls, program: RingProgram, domain: ControlDomain) -> "RingView":
        points = tuple(
            position
            for position in range(1, program.length + 1)
            if domain.contains(program.walk.switch_at(position))
        )
        if not points:
            raise DiagnosisException(
                f"Controller {domain.controller} has no switch on the ring"
            )
        return cls(
            program=program,
            domain=domain,
            injection_points=points,
            multiplicity=len(points),
        )

    @property
    def walk(self) -> Walk:
        return self.program.walk

    @property
    def reverse(self) -> Walk:
        return self.program.reverse

    @property
    def length(self) -> int:
        return self.program.length

    @property
    def controller(self) -> str:
        return self.domain.controller

    def injection(self, position: int, flow: FlowTag) -> InjectionPoint:
        in_arc, _ = self.program.arrival(position, flow)
        return InjectionPoint(switch=self.walk.switch_at(position), in_arc=in_arc)

    def target_position(
        self, position: int, distance: int, direction: SearchDirection
    ) -> int:
        step = distance if direction is SearchDirection.CLOCKWISE else -distance
        return (position - 1 + step) % self.length + 1

    def outward_arc(
        self, position: int, distance: int, direction: SearchDirection
    ) -> Arc:
        """Last arc a probe of `distance` hops crosses on its way out."""
        if direction is SearchDirection.CLOCKWISE:
            return self.walk.arcs[(position - 1 + distance - 1) % self.length]
        start = self.program.reverse_index(position - 1)
        return self.reverse.arcs[(start + distance - 1) % self.length]


class _ProbeSession:
    """Loopback rules of one injection position, installed for a campaign."""

    def __init__(
        self,
        fabric: Fabric,
        ring: RingView,
        position: int,
        batches: List[int],
        observer: Optional[ProbeObserver],
    ):
        self.fabric = fabric
        self.ring = ring
        self.position = position
        self.records: List[ProbeRecord] = []
        self._batches = batches
        self._observer = observer
        self._installed: List[str] = []

    def __enter__(self) -> "_ProbeSession":
        for flow in (FlowTag.A, FlowTag.B):
            rule = compile_loopback(
                self.ring.program, self.position, self.ring.controller, flow
            )
            switch_table = self.fabric.table(rule.switch)
            if any(existing.rule_id == rule.rule_id for existing in switch_table):
                continue
            install_rule(self.fabric, rule)
            self._installed.append(rule.rule_id)
        return self

    def __exit__(self, *exc) -> None:
        for rule_id in self._installed:
            self.fabric.remove(rule_id)
        self._installed.clear()

    def next_batch(self) -> int:
        self._batches[0] += 1
        return self._batches[0]

    def lap(self) -> ProbeRecord:
        """Full clockwise lap back to the loopback."""
        header = Header(flow=FlowTag.A, controller=self.ring.controller)
        return self._send(
            header,
            FlowTag.A,
            None,
            SearchDirection.CLOCKWISE,
            self.ring.length,
            self.next_batch(),
        )

    def bounce(
        self, distance: int, direction: SearchDirection, batch: int
    ) -> ProbeRecord:
        flow = FlowTag.A if direction is SearchDirection.CLOCKWISE else FlowTag.B
        target = self.ring.target_position(self.position, distance, direction)
        header = Header(
            flow=flow,
            controller=self.ring.controller,
            bounce_target=target,
            bounce_set=1 if flow is FlowTag.A else 2,
        )
        return self._send(header, flow, target, direction, 2 * distance, batch)

    def _send(
        self,
        header: Header,
        flow: FlowTag,
        target: Optional[int],
        direction: SearchDirection,
        path_length: int,
        batch: int,
    ) -> ProbeRecord:
        _, vlan = self.ring.program.arrival(self.position, flow)
        outcome = inject(
            self.fabric,
            header.with_changes(vlan=vlan),
            self.ring.injection(self.position, flow),
        )
        record = ProbeRecord(
            target=target,
            direction=direction,
            returned=outcome.returned,
            hops=outcome.hops,
            path_length=path_length,
            batch=batch,
            injected_at=self.position,
        )
        logger.debug(
            f"Probe from v{self.position} {direction.value} target={target} "
            f"returned={outcome.returned} hops={outcome.hops}"
        )
        self.records.append(record)
        if self._observer is not None:
            self._observer(record, outcome)
        return record


def verify(
    fabric: Fabric,
    ring: RingView,
    from_position: Optional[int] = None,
    observer: Optional[ProbeObserver] = None,
) -> DiagnosisReport:
    """One full lap from `from_position`; healthy iff it comes back."""
    position = _injection_position(ring, from_position)
    with _ProbeSession(fabric, ring, position, [0], observer) as session:
        record = session.lap()
    verdict = Verdict.HEALTHY if record.returned else Verdict.FAILED
    return _report(fabric, verdict, Strategy.VERIFY, session.records, [], 1)


def locate_single(
    fabric: Fabric,
    ring: RingView,
    from_position: Optional[int] = None,
    observer: Optional[ProbeObserver] = None,
) -> DiagnosisReport:
    """Binary search for the first failed link clockwise from `from_position`."""
    return _locate_one_way(fabric, ring, from_position, 1, Strategy.SEQUENTIAL, observer)


def locate_parallel(
    fabric: Fabric,
    ring: RingView,
    from_position: Optional[int] = None,
    m: int = 1,
    observer: Optional[ProbeObserver] = None,
) -> DiagnosisReport:
    """m probes per round split the suspect segment into m+1 parts."""
    if m < 1:
        raise DiagnosisException(f"Parallel search needs m >= 1, got {m}")
    return _locate_one_way(fabric, ring, from_position, m, Strategy.PARALLEL, observer)


def locate_bidirectional(
    fabric: Fabric,
    ring: RingView,
    from_position: Optional[int] = None,
    m: int = 1,
    observer: Optional[ProbeObserver] = None,
) -> DiagnosisReport:
    """Like locate_parallel, but after the first round the search continues
    from whichever direction reaches the suspect segment with shorter probes.

    Assumes one failed link: counter-clockwise probes of up to `L - hi` hops
    stay clear of the segment (lo, hi] and are taken to come back.
    """
    if m < 1:
        raise DiagnosisException(f"Bidirectional search needs m >= 1, got {m}")
    _require_kinds(fabric, RuleKind.BOUNCE_2, RuleKind.WALK_CCW)
    position = _injection_position(ring, from_position)
    length = ring.length

    findings: List[LocatedFailure] = []
    batches = [0]
    with _ProbeSession(fabric, ring, position, batches, observer) as session:
        if session.lap().returned:
            return _report(
                fabric, Verdict.HEALTHY, Strategy.BIDIRECTIONAL, session.records, [], m
            )

        lo, hi = _search_round(session, SearchDirection.CLOCKWISE, 0, length, m)
        if hi - lo > 1 and length - lo < hi:
            direction = SearchDirection.COUNTER_CLOCKWISE
            distance = _bisect(session, direction, length - hi, length - lo, m)
        else:
            direction = SearchDirection.CLOCKWISE
            distance = _bisect(session, direction, lo, hi, m)
        findings.append(_finding(fabric, ring, position, distance, direction))

    return _report(
        fabric, Verdict.FAILED, Strategy.BIDIRECTIONAL, session.records, findings, m
    )


def locate_multi(
    fabric: Fabric,
    ring: RingView,
    domain: Optional[ControlDomain] = None,
    observer: Optional[ProbeObserver] = None,
) -> DiagnosisReport:
    """Search both directions from every ring visit of the domain's switches.

    Both laps cover every link, so one clockwise lap per position decides
    whether anything failed; a failed lap starts a clockwise and a
    counter-clockwise binary search.
    """
    _require_kinds(fabric, RuleKind.BOUNCE_1, RuleKind.BOUNCE_2, RuleKind.WALK_CCW)
    view = ring
    if domain is not None and domain != ring.domain:
        view = RingView.for_domain(ring.program, domain)

    findings: List[LocatedFailure] = []
    records: List[ProbeRecord] = []
    failed = False
    batches = [0]
    for position in view.injection_points:
        with _ProbeSession(fabric, view, position, batches, observer) as session:
            if not session.lap().returned:
                failed = True
                for direction in SearchDirection:
                    distance = _bisect(session, direction, 0, view.length, 1)
                    findings.append(_finding(fabric, view, position, distance, direction))
        records.extend(session.records)

    verdict = Verdict.FAILED if failed else Verdict.HEALTHY
    return _report(fabric, verdict, Strategy.MULTI, records, findings, 1)


def _locate_one_way(
    fabric: Fabric,
    ring: RingView,
    from_position: Optional[int],
    m: int,
    strategy: Strategy,
    observer: Optional[ProbeObserver],
) -> DiagnosisReport:
    position = _injection_position(ring, from_position)
    with _ProbeSession(fabric, ring, position, [0], observer) as session:
        if session.lap().returned:
            return _report(fabric, Verdict.HEALTHY, strategy, session.records, [], m)
        distance = _bisect(session, SearchDirection.CLOCKWISE, 0, ring.length, m)
    finding = _finding(fabric, ring, position, distance, SearchDirection.CLOCKWISE)
    return _report(fabric, Verdict.FAILED, strategy, session.records, [finding], m)


def _search_round(
    session: _ProbeSession, direction: SearchDirection, lo: int, hi: int, m: int
) -> Tuple[int, int]:
    """One batch of up to m probes inside (lo, hi]; returns the narrowed interval.

    `lo` is a distance known to come back, `hi` one known to be lost.
    """
    span = hi - lo
    distances = sorted({lo + (i * span) // (m + 1) for i in range(1, m + 1)} - {lo})
    batch = session.next_batch()
    outcomes = [(d, session.bounce(d, direction, batch).returned) for d in distances]
    lo = max([d for d, returned in outcomes if returned], default=lo)
    hi = min([d for d, returned in outcomes if not returned and d > lo], default=hi)
    return lo, hi


def _bisect(
    session: _ProbeSession, direction: SearchDirection, lo: int, hi: int, m: int
) -> int:
    """Shortest lost distance, i.e. the hop count reaching the first failure."""
    while hi - lo > 1:
        lo, hi = _search_round(session, direction, lo, hi, m)
    return hi


def _finding(
    fabric: Fabric,
    ring: RingView,
    position: int,
    distance: int,
    direction: SearchDirection,
) -> LocatedFailure:
    arc = ring.outward_arc(position, distance, direction)
    suspects: Tuple[Arc, ...] = ()
    if fabric.failures.mode is FailureMode.ASYMMETRIC:
        # a round trip crosses the link both ways, so either direction may be down
        suspects = (arc, arc.reversed())
    return LocatedFailure(
        edge=arc.edge,
        arc=arc,
        direction=direction,
        injected_at=position,
        suspects=suspects,
    )


def _report(
    fabric: Fabric,
    verdict: Verdict,
    strategy: Strategy,
    records: List[ProbeRecord],
    findings: List[LocatedFailure],
    m: int,
) -> DiagnosisReport:
    slowest: Dict[int, int] = {}
    for record in records:
        slowest[record.batch] = max(slowest.get(record.batch, 0), record.path_length)
    return DiagnosisReport(
        verdict=verdict,
        strategy=strategy,
        messages=len(records),
        total_hops=sum(record.path_length for record in records),
        latency_us=fabric.tau_us * sum(slowest.values()),
        located=frozenset(finding.edge for finding in findings),
        findings=tuple(findings),
        probes=tuple(records),
        mode=fabric.failures.mode,
        m=m,
    )


def _injection_position(ring: RingView, from_position: Optional[int]) -> int:
    if from_position is None:
        return ring.injection_points[0]
    if from_position not in ring.injection_points:
        raise DiagnosisException(
            f"Ring position {from_position} is not an injection point of "
            f"{ring.controller}"
        )
    return from_position


def _require_kinds(fabric: Fabric, *kinds: RuleKind) -> None:
    missing = [kind.value for kind in kinds if not fabric.has_kind(kind)]
    if missing:
        raise DiagnosisException(
            f"Fabric lacks required rule sets: {', '.join(missing)}"
        )
