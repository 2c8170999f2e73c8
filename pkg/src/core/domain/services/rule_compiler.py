"""
File: rule_compiler.py
Description: Compiles rings into static walk, bounce-back and loopback rules
Author: RingDiag Team
Created: 2025-06-04
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import (
    Callable,
    Dict,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from src.config.settings import settings

from ..entities.rule import Action, Match, Rule, RuleKind, RuleSet
from ..entities.walk import Walk
from ..exceptions.base import DomainException, ValidationException
from ..value_objects import Arc, FlowTag, Header, SwitchId
from .walk_synthesis import reverse_walk

logger = logging.getLogger(__name__)

_SINGLE = "single"
_IN_PORT = "in_port"
_VLAN = "vlan"
_WIDEN_TRIALS = 8


class RuleCompilationException(DomainException):
    """Exception raised when a ring cannot be compiled into rules."""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message, code="rule_compilation_error")


class TagBudgetExceededException(RuleCompilationException):
    """Exception raised when disambiguation needs more VLAN tags than allowed."""

    pass


@dataclass(frozen=True)
class RingProgram:
    """A ring, its reverse and the walk rules compiled for both directions."""

    walk: Walk
    reverse: Walk
    clockwise: RuleSet
    counter_clockwise: RuleSet

    @property
    def length(self) -> int:
        return self.walk.length

    def reverse_index(self, index: int) -> int:
        """Index on the reverse ring of the same position (0-based)."""
        return (-index) % self.length

    def arrival(self, position: int, flow: FlowTag) -> Tuple[Arc, Optional[int]]:
        """(in-arc, vlan) a faultless probe of `flow` carries at `position`."""
        index = position - 1
        if flow is FlowTag.A:
            return self.walk.arcs[index - 1], self.clockwise.arrival_vlans[index]
        mirrored = self.reverse_index(index)
        return (
            self.reverse.arcs[mirrored - 1],
            self.counter_clockwise.arrival_vlans[mirrored],
        )

    def static_sets(self) -> List[RuleSet]:
        return [self.clockwise, self.counter_clockwise]


@dataclass
class _SwitchPlan:
    """How one switch tells its out-arcs apart."""

    switch: SwitchId
    out_arcs: List[Arc] = field(default_factory=list)
    feeders: Dict[Arc, List[Arc]] = field(default_factory=dict)
    mode: str = _SINGLE
    default_out: Optional[Arc] = None
    pinned: List[Arc] = field(default_factory=list)

    def matched_arcs(self) -> List[Arc]:
        """Out-arcs whose rule matches a VLAN tag."""
        if self.mode != _VLAN:
            return []
        return [
            out
            for out in self.out_arcs
            if out != self.default_out and out not in self.pinned
        ]

    def constrains(self, out: Arc) -> bool:
        """Whether the tag a probe carries decides which rule takes `out`."""
        return self.mode == _VLAN and out not in self.pinned


@dataclass
class _TagLayout:
    """VLAN tags of matched arcs and the values written upstream.

    `position_writes` maps ring indices to the tag a rule of their own
    writes there, for positions the rule of their arc cannot serve.
    """

    tag_of: Dict[Arc, int] = field(default_factory=dict)
    arc_writes: Dict[Arc, int] = field(default_factory=dict)
    position_writes: Dict[int, int] = field(default_factory=dict)

    def written_at(self, index: int, arc: Arc) -> Optional[int]:
        if index in self.position_writes:
            return self.position_writes[index]
        return self.arc_writes.get(arc)

    def tags(self) -> List[int]:
        return [
            *self.tag_of.values(),
            *self.arc_writes.values(),
            *self.position_writes.values(),
        ]


class _TagClasses:
    """Union-find over tag variables with must-differ pairs between classes."""

    def __init__(self) -> None:
        self._parent: Dict[Hashable, Hashable] = {}
        self._apart: Dict[Hashable, Set[Hashable]] = defaultdict(set)
        self._order: List[Hashable] = []

    def add(self, key: Hashable) -> None:
        if key not in self._parent:
            self._parent[key] = key
            self._order.append(key)

    def find(self, key: Hashable) -> Hashable:
        while self._parent[key] != key:
            self._parent[key] = self._parent[self._parent[key]]
            key = self._parent[key]
        return key

    def join(self, a: Hashable, b: Hashable) -> bool:
        """Merge two classes; False when they must differ."""
        root, other = self.find(a), self.find(b)
        if root == other:
            return True
        if other in self._apart[root]:
            return False
        self._parent[other] = root
        for neighbour in self._apart.pop(other, set()):
            self._apart[neighbour].discard(other)
            self._apart[neighbour].add(root)
            self._apart[root].add(neighbour)
        return True

    def separate(self, a: Hashable, b: Hashable) -> bool:
        root, other = self.find(a), self.find(b)
        if root == other:
            return False
        self._apart[root].add(other)
        self._apart[other].add(root)
        return True

    def colours(self) -> Dict[Hashable, int]:
        """Smallest tag per class, classes taken in order of first use."""
        by_root: Dict[Hashable, int] = {}
        for key in self._order:
            root = self.find(key)
            if root in by_root:
                continue
            taken = {by_root[r] for r in self._apart[root] if r in by_root}
            tag = 1
            while tag in taken:
                tag += 1
            by_root[root] = tag
        return {key: by_root[self.find(key)] for key in self._order}


def compile_walk(
    walk: Walk, flow: FlowTag = FlowTag.A, tag_budget: Optional[int] = None
) -> RuleSet:
    """One walk rule per distinct arc of the ring.

    A switch that always leaves on the same arc gets a wildcard rule. When
    the in-port decides the out-arc, rules match the in-port and the arc
    fed from several in-ports becomes the wildcard fallback. Otherwise
    rules match VLAN tags written by upstream taggers, found by walking
    counter-clockwise from each tagged position to the first switch visited
    once, then to the first arc used once, then to any arc. The busiest
    out-arc of such a switch may instead be a wildcard fallback taken by
    every tag its other out-arcs do not match.

    Positions no tagger can serve get a rule of their own at the preceding
    position, reported as `extra_rules`. Only when even that replays
    wrongly does every position get its own tag.
    """
    budget = tag_budget if tag_budget is not None else settings.tag_budget
    if budget < 1:
        raise ValidationException("Tag budget must be positive", field="tag_budget")

    kind = RuleKind.WALK_CW if flow is FlowTag.A else RuleKind.WALK_CCW
    arcs = list(walk.arcs)

    visits: Dict[SwitchId, int] = defaultdict(int)
    uses: Dict[Arc, int] = defaultdict(int)
    for arc in arcs:
        visits[arc.tail] += 1
        uses[arc] += 1

    tiers: List[Tuple[str, Callable[[Arc], bool]]] = [
        ("single-visit taggers", lambda arc: visits[arc.tail] == 1),
        ("single-use taggers", lambda arc: uses[arc] == 1),
        ("shared taggers", lambda arc: True),
    ]

    best: Optional[RuleSet] = None
    for fallback in (False, True):
        plans = _plan_switches(arcs, uses, fallback)
        for label, eligible in tiers:
            layout = _lay_out_tags(arcs, plans, eligible)
            _check_budget(layout.tags(), budget, walk)
            rule_set = _build(arcs, plans, layout, kind, flow)
            if rule_set is None:
                continue
            if rule_set.extra_rules == 0:
                suffix = " and wildcard fallbacks" if fallback else ""
                logger.debug(
                    f"Compiled {len(rule_set)} {kind.value} rules with {label}{suffix}"
                )
                return rule_set
            if best is None or len(rule_set) < len(best):
                best = rule_set

    if best is not None:
        logger.warning(
            f"{kind.value} needs {best.extra_rules} per-position rules beyond "
            f"its {len(uses)} arcs"
        )
        return best
    return _sequence_tagged(arcs, kind, flow, budget, len(uses))


def compile_ring(walk: Walk, tag_budget: Optional[int] = None) -> RingProgram:
    """Walk rules for the ring and for its reverse."""
    _require_aperiodic(walk)
    reverse = reverse_walk(walk)
    return RingProgram(
        walk=walk,
        reverse=reverse,
        clockwise=compile_walk(walk, FlowTag.A, tag_budget),
        counter_clockwise=compile_walk(reverse, FlowTag.B, tag_budget),
    )


def compile_bounceback(ring: Union[Walk, RingProgram], bounce_set: int) -> RuleSet:
    """One bounce-back rule per ring position.

    Set 1 turns a clockwise probe addressed to v_i into a counter-clockwise
    one, set 2 does the opposite. Each rule also matches the arrival
    context of v_i so a switch visited several times bounces only at the
    addressed position, and rewrites the tag to what the opposite walk
    expects next.
    """
    if bounce_set not in (1, 2):
        raise ValidationException(
            "Bounce set must be 1 or 2", field="bounce_set", value=bounce_set
        )
    program = ring if isinstance(ring, RingProgram) else compile_ring(ring)
    length = program.length
    kind = RuleKind.BOUNCE_1 if bounce_set == 1 else RuleKind.BOUNCE_2
    arriving = FlowTag.A if bounce_set == 1 else FlowTag.B
    leaving = arriving.opposite()

    rules = []
    for index in range(length):
        position = index + 1
        in_arc, vlan = program.arrival(position, arriving)
        if bounce_set == 1:
            # leaves towards v_{i-1}, where the counter-clockwise walk resumes
            _, next_vlan = program.arrival((index - 1) % length + 1, leaving)
        else:
            _, next_vlan = program.arrival((index + 1) % length + 1, leaving)

        actions = [Action.set_flow(leaving)]
        if next_vlan is not None:
            actions.append(Action.set_vlan(next_vlan))
        actions.append(Action.send_back_in_port())
        rules.append(
            Rule(
                rule_id=f"{kind.value}:v{position}",
                switch=program.walk.arcs[index].tail,
                priority=kind.priority,
                match=Match(
                    flow=arriving,
                    in_arc=in_arc,
                    vlan=vlan,
                    bounce_target=position,
                    bounce_set=bounce_set,
                ),
                actions=tuple(actions),
            )
        )
    return RuleSet(kind=kind, rules=tuple(rules), ring_length=length)


def compile_loopback(
    program: RingProgram,
    position: int,
    controller: str,
    flow: FlowTag = FlowTag.A,
) -> Rule:
    """Dynamic rule returning a probe of `controller` to it when it comes back
    to `position` in direction `flow`."""
    if position < 1 or position > program.length:
        raise ValidationException(
            f"Ring position must be within 1..{program.length}",
            field="position",
            value=position,
        )
    in_arc, vlan = program.arrival(position, flow)
    return Rule(
        rule_id=f"loopback:{controller}:{flow.value}:v{position}",
        switch=program.walk.switch_at(position),
        priority=RuleKind.LOOPBACK.priority,
        match=Match(controller=controller, flow=flow, in_arc=in_arc, vlan=vlan),
        actions=(Action.to_controller(controller),),
    )


def total_static_rules(sets: Iterable[RuleSet]) -> int:
    """Rules a ring pre-installs; dynamic loopback sets are not accepted."""
    total = 0
    for rule_set in sets:
        if not rule_set.kind.is_static:
            raise ValidationException(
                "Loopback rules are dynamic and not part of the static count",
                field="kind",
                value=rule_set.kind.value,
            )
        total += len(rule_set)
    return total


def _plan_switches(
    arcs: Sequence[Arc], uses: Dict[Arc, int], fallback: bool
) -> Dict[SwitchId, _SwitchPlan]:
    plans: Dict[SwitchId, _SwitchPlan] = {}
    for index, out in enumerate(arcs):
        plan = plans.setdefault(out.tail, _SwitchPlan(switch=out.tail))
        if out not in plan.feeders:
            plan.out_arcs.append(out)
            plan.feeders[out] = []
        into = arcs[index - 1]
        if into not in plan.feeders[out]:
            plan.feeders[out].append(into)

    for plan in plans.values():
        if len(plan.out_arcs) == 1:
            continue
        destinations: Dict[Arc, set] = defaultdict(set)
        for out, feeders in plan.feeders.items():
            for into in feeders:
                destinations[into].add(out)
        shared = [out for out in plan.out_arcs if len(plan.feeders[out]) > 1]
        if all(len(outs) == 1 for outs in destinations.values()) and len(shared) <= 1:
            plan.mode = _IN_PORT
            plan.default_out = shared[0] if shared else None
            continue
        plan.mode = _VLAN
        # an out-arc fed by a single in-port that leads nowhere else needs no tag
        plan.pinned = [
            out
            for out, feeders in plan.feeders.items()
            if len(feeders) == 1 and len(destinations[feeders[0]]) == 1
        ]
        if fallback:
            tagged = [out for out in plan.out_arcs if out not in plan.pinned]
            plan.default_out = max(tagged, key=lambda out: uses[out])
    return plans


def _lay_out_tags(
    arcs: Sequence[Arc],
    plans: Dict[SwitchId, _SwitchPlan],
    eligible: Callable[[Arc], bool],
) -> _TagLayout:
    """Taggers and tags for every position whose rule is picked by its tag.

    Each such position is first served by the nearest eligible position
    before it. While two positions served by the same tagger need
    different tags, another tagger goes between the later one and the
    tagger serving it. What still clashes falls back to per-position rules.
    """
    length = len(arcs)
    constrained = [i for i in range(length) if plans[arcs[i].tail].constrains(arcs[i])]
    if not constrained:
        return _TagLayout()

    occurrences: Dict[Arc, List[int]] = defaultdict(list)
    for index, arc in enumerate(arcs):
        occurrences[arc].append(index)

    writers: Set[int] = set()
    for i in constrained:
        for step in range(1, length + 1):
            j = (i - step) % length
            if j in writers:
                break
            if eligible(arcs[j]):
                writers.update(occurrences[arcs[j]])
                break

    while True:
        layout, clash, _ = _resolve(arcs, plans, writers, repair=False)
        if layout is not None:
            return layout
        widened = _widen(arcs, plans, writers, clash, occurrences)
        if widened is None:
            break
        writers = widened
    layout, _, _ = _resolve(arcs, plans, writers, repair=True)
    return layout if layout is not None else _TagLayout()


def _resolve(
    arcs: Sequence[Arc],
    plans: Dict[SwitchId, _SwitchPlan],
    writers: Set[int],
    repair: bool,
) -> Tuple[Optional[_TagLayout], int, int]:
    """Tags for a fixed set of tagging positions.

    Returns the layout, or None with the first position whose constraint
    clashes and how many constrained positions were satisfied before it.
    With `repair` a clashing position gets a rule of its own at its
    predecessor instead.
    """
    length = len(arcs)
    constrained = [i for i in range(length) if plans[arcs[i].tail].constrains(arcs[i])]

    classes = _TagClasses()
    for arc in arcs:
        if arc in plans[arc.tail].matched_arcs():
            classes.add(("tag", arc))
    for plan in plans.values():
        for a, b in combinations(plan.matched_arcs(), 2):
            classes.separate(("tag", a), ("tag", b))

    own_rules: Set[int] = set()
    if writers:
        start = min(writers) + 1
    elif repair:
        start = constrained[0]
        own_rules.add((start - 1) % length)
    else:
        return None, constrained[0], 0

    governor: Hashable = None
    reached = 0
    for step in range(length):
        i = (start + step) % length
        previous = (i - 1) % length
        if previous in own_rules:
            governor = ("position", previous)
        elif previous in writers:
            governor = ("arc", arcs[previous])
        plan = plans[arcs[i].tail]
        if not plan.constrains(arcs[i]):
            continue
        classes.add(governor)
        if _constrain(classes, governor, arcs[i], plan):
            reached += 1
            continue
        if not repair:
            return None, i, reached
        own_rules.add(previous)
        governor = ("position", previous)
        classes.add(governor)
        _constrain(classes, governor, arcs[i], plan)

    layout = _TagLayout()
    for (role, subject), tag in classes.colours().items():
        if role == "tag":
            layout.tag_of[subject] = tag
        elif role == "arc":
            layout.arc_writes[subject] = tag
        else:
            layout.position_writes[subject] = tag
    return layout, -1, reached


def _constrain(
    classes: _TagClasses, governor: Hashable, out: Arc, plan: _SwitchPlan
) -> bool:
    """Tie the tag a position arrives with to the rule that must take `out`."""
    if out != plan.default_out:
        return classes.join(governor, ("tag", out))
    others = [("tag", arc) for arc in plan.matched_arcs()]
    if any(classes.find(governor) == classes.find(key) for key in others):
        return False
    for key in others:
        classes.separate(governor, key)
    return True


def _widen(
    arcs: Sequence[Arc],
    plans: Dict[SwitchId, _SwitchPlan],
    writers: Set[int],
    clash: int,
    occurrences: Dict[Arc, List[int]],
) -> Optional[Set[int]]:
    """`writers` plus one tagger between `clash` and the tagger serving it.

    Arcs used once are tried first, nearest first. The first candidate that
    resolves every position wins, otherwise the one satisfying most.
    """
    length = len(arcs)
    candidates: List[int] = []
    for step in range(1, length):
        j = (clash - step) % length
        if j in writers:
            break
        candidates.append(j)
    candidates.sort(key=lambda j: len(occurrences[arcs[j]]) > 1)

    best: Optional[Set[int]] = None
    best_reached = -1
    for j in candidates[:_WIDEN_TRIALS]:
        trial = writers | set(occurrences[arcs[j]])
        layout, _, reached = _resolve(arcs, plans, trial, repair=False)
        if layout is not None:
            return trial
        if reached > best_reached:
            best, best_reached = trial, reached
    return best


def _arrivals(arcs: Sequence[Arc], layout: _TagLayout) -> List[Optional[int]]:
    """Tag a faultless probe carries into each position."""
    vlan: Optional[int] = None
    for index in range(len(arcs) - 1, -1, -1):
        written = layout.written_at(index, arcs[index])
        if written is not None:
            vlan = written
            break
    arrivals: List[Optional[int]] = []
    for index, arc in enumerate(arcs):
        arrivals.append(vlan)
        written = layout.written_at(index, arc)
        if written is not None:
            vlan = written
    return arrivals


def _build(
    arcs: Sequence[Arc],
    plans: Dict[SwitchId, _SwitchPlan],
    layout: _TagLayout,
    kind: RuleKind,
    flow: FlowTag,
) -> Optional[RuleSet]:
    expected = _arrivals(arcs, layout)
    rules = _walk_rules(plans, layout, expected, arcs, kind, flow)
    arrivals = _replay(arcs, rules, flow, expected[0])
    if arrivals is None:
        return None
    return RuleSet(
        kind=kind,
        rules=tuple(rules),
        ring_length=len(arcs),
        arrival_vlans=tuple(arrivals),
        extra_rules=len(layout.position_writes),
    )


def _walk_rules(
    plans: Dict[SwitchId, _SwitchPlan],
    layout: _TagLayout,
    arrivals: Sequence[Optional[int]],
    arcs: Sequence[Arc],
    kind: RuleKind,
    flow: FlowTag,
) -> List[Rule]:
    own_rules: Dict[SwitchId, List[int]] = defaultdict(list)
    for index in sorted(layout.position_writes):
        own_rules[arcs[index].tail].append(index)

    rules: List[Rule] = []
    for switch in sorted(plans):
        plan = plans[switch]
        for index in own_rules[switch]:
            rules.append(
                Rule(
                    rule_id=f"{kind.value}:s{switch}:v{index + 1}",
                    switch=switch,
                    priority=kind.priority,
                    match=Match(
                        flow=flow, in_arc=arcs[index - 1], vlan=arrivals[index]
                    ),
                    actions=(
                        Action.set_vlan(layout.position_writes[index]),
                        Action.forward(arcs[index]),
                    ),
                )
            )

        ordered = [out for out in plan.out_arcs if out in plan.pinned]
        ordered += [out for out in plan.out_arcs if out not in ordered]
        if plan.default_out is not None:
            ordered.remove(plan.default_out)
            ordered.append(plan.default_out)
        for number, out in enumerate(ordered):
            if out == plan.default_out or plan.mode == _SINGLE:
                match = Match(flow=flow)
            elif plan.mode == _IN_PORT or out in plan.pinned:
                match = Match(flow=flow, in_arc=plan.feeders[out][0])
            else:
                match = Match(flow=flow, vlan=layout.tag_of[out])
            actions = []
            if out in layout.arc_writes:
                actions.append(Action.set_vlan(layout.arc_writes[out]))
            actions.append(Action.forward(out))
            rules.append(
                Rule(
                    rule_id=f"{kind.value}:s{switch}:{number}",
                    switch=switch,
                    priority=kind.priority,
                    match=match,
                    actions=tuple(actions),
                )
            )
    return rules


def _replay(
    arcs: Sequence[Arc],
    rules: Sequence[Rule],
    flow: FlowTag,
    vlan: Optional[int],
) -> Optional[List[Optional[int]]]:
    """Symbolic lap of the ring from `vlan`; arrival tags, or None on any
    divergence."""
    table: Dict[SwitchId, List[Rule]] = defaultdict(list)
    for rule in rules:
        table[rule.switch].append(rule)

    arrivals: List[Optional[int]] = []
    for index, out in enumerate(arcs):
        header = Header(flow=flow, vlan=vlan)
        matched = next(
            (r for r in table[out.tail] if r.match.matches(header, arcs[index - 1])),
            None,
        )
        if matched is None or matched.out_arc != out:
            return None
        arrivals.append(vlan)
        if matched.sets_vlan is not None:
            vlan = matched.sets_vlan
    if arrivals and vlan != arrivals[0]:
        return None
    return arrivals


def _sequence_tagged(
    arcs: Sequence[Arc], kind: RuleKind, flow: FlowTag, budget: int, unique: int
) -> RuleSet:
    """Last resort: every position carries its own tag."""
    length = len(arcs)
    if length > budget:
        raise TagBudgetExceededException(
            f"Per-position tagging needs {length} tags, budget is {budget}"
        )
    rules = [
        Rule(
            rule_id=f"{kind.value}:v{index + 1}",
            switch=out.tail,
            priority=kind.priority,
            match=Match(flow=flow, in_arc=arcs[index - 1], vlan=index + 1),
            actions=(Action.set_vlan((index + 1) % length + 1), Action.forward(out)),
        )
        for index, out in enumerate(arcs)
    ]
    extra = length - unique
    logger.warning(
        f"No consistent tagger assignment for {kind.value}; per-position tagging "
        f"uses {extra} extra rules"
    )
    return RuleSet(
        kind=kind,
        rules=tuple(rules),
        ring_length=length,
        arrival_vlans=tuple(range(1, length + 1)),
        extra_rules=extra,
    )


def _check_budget(tags: Iterable[int], budget: int, walk: Walk) -> None:
    highest = max(tags, default=0)
    if highest > budget:
        raise TagBudgetExceededException(
            f"Ring of length {walk.length} needs {highest} VLAN tags, budget is {budget}"
        )


def _require_aperiodic(walk: Walk) -> None:
    """A ring that repeats a shorter ring gives two positions the same
    arrival context, so loopback rules could not tell them apart."""
    arcs = walk.arcs
    length = len(arcs)
    for period in range(1, length // 2 + 1):
        if length % period == 0 and arcs == arcs[period:] + arcs[:period]:
            raise RuleCompilationException(
                f"Ring of length {length} repeats every {period} hops"
            )
