"""Simple optimal schedules for half-duplex line networks.

The pipeline treats link ``i`` as ``n_i = M / l_i`` parallel edges of a
bipartite line multigraph, colors those edges with ``Delta`` colors using
one contiguous interval per link, and then merges runs of colors that
drive the relays identically into single states.  Every color stands for
``1/Delta`` of the time, so the resulting schedule has at most N+1 states
and achieves ``M/Delta``, which equals the closed-form capacity.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import (
    InternalInvariantError,
    InvalidValueError,
    ResolutionTooCoarseError,
    UnsupportedCapacityError,
)
from .ext import fmt, is_inf
from .line_model import LineNetwork, Schedule, State, _require_relays

DEFAULT_DENOMINATOR = 10 ** 6

Interval = Tuple[int, int]


@dataclass(frozen=True)
class Multiplicities:
    M: int
    n: Tuple[int, ...]


@dataclass(frozen=True)
class ColorAssignment:
    delta: int
    intervals: Tuple[Interval, ...]


@dataclass(frozen=True)
class Group:
    lo: int
    hi: int
    state: State
    weight: Fraction


@dataclass(frozen=True)
class GroupedSchedule:
    delta: int
    boundaries: Tuple[int, ...]  # p_u, descending
    groups: Tuple[Group, ...]

    def to_schedule(self) -> Schedule:
        entries: Dict[State, Fraction] = {}
        for g in self.groups:
            entries[g.state] = entries.get(g.state, Fraction(0)) + g.weight
        return Schedule(entries)

    def to_json(self) -> dict:
        return {"states": [{"s": g.state, "w": fmt(g.weight), "colors": [g.lo, g.hi]}
                           for g in self.groups]}


def integerize(net: LineNetwork) -> Tuple[LineNetwork, Fraction]:
    """Scale rational links to integers; returns ``(integer_net, scale)``.

    ``scale = 1 / lcm(denominators)`` so that ``original = scale * integer``.
    """
    for v in net.links:
        if is_inf(v) or v <= 0:
            raise UnsupportedCapacityError(f"cannot integerize link capacity {v}")
    den = math.lcm(*(v.denominator for v in net.links))
    return LineNetwork(tuple(v * den for v in net.links)), Fraction(1, den)


def multiplicities(net: LineNetwork) -> Multiplicities:
    caps = []
    for v in net.links:
        if is_inf(v) or v <= 0 or v.denominator != 1:
            raise UnsupportedCapacityError(f"multiplicities need positive integers, got {v}")
        caps.append(v.numerator)
    M = math.lcm(*caps)
    return Multiplicities(M, tuple(M // c for c in caps))


def color_intervals(mult: Multiplicities) -> ColorAssignment:
    n = mult.n
    if len(n) < 2:
        raise InvalidValueError("need at least one relay")
    delta = max(n[i] + n[i + 1] for i in range(len(n) - 1))
    intervals = []
    for i, ni in enumerate(n, start=1):
        if i % 2 == 0:
            intervals.append((1, ni))
        else:
            intervals.append((delta - ni + 1, delta))
    return ColorAssignment(delta, tuple(intervals))


def group_colors(n_relays: int, delta: int, intervals: Sequence[Interval]) -> GroupedSchedule:
    """Merge color runs into at most N+1 relay states.

    Colors are cut into runs at every interval boundary.  Each run becomes
    one state: a relay receives if its incoming link is active in the run,
    transmits if its outgoing link is.  An unpinned relay transmits when no
    link to its left is active in the run and receives otherwise.
    """
    N = n_relays
    if len(intervals) != N + 1:
        raise InternalInvariantError(f"expected {N + 1} intervals, got {len(intervals)}")
    for lo, hi in intervals:
        if not 1 <= lo <= hi <= delta:
            raise InternalInvariantError(f"interval [{lo}:{hi}] outside [1:{delta}]")

    p = [lo for lo, _ in intervals] + [hi + 1 for _, hi in intervals]
    p_u = sorted(set(p), reverse=True)

    groups = []
    for j in range(len(p_u) - 1):
        hi, lo = p_u[j] - 1, p_u[j + 1]
        weight = Fraction(hi - lo + 1, delta)
        row: List[object] = [None] * N
        state = 1
        prev_active = False
        for i in range(1, N + 2):
            c_lo, c_hi = intervals[i - 1]
            active = c_lo <= lo and hi <= c_hi
            if active and prev_active:
                raise InternalInvariantError(
                    f"links {i - 1} and {i} share colors [{lo}:{hi}]")
            prev_active = active
            if active:
                state = 0
                if i < N + 1:
                    row[i - 1] = 0
                if i > 1:
                    row[i - 2] = 1
            else:
                if not (hi < c_lo or lo > c_hi):
                    raise InternalInvariantError(
                        f"color run [{lo}:{hi}] straddles interval [{c_lo}:{c_hi}]")
                if i < N + 1:
                    row[i - 1] = state
        if any(b is None for b in row):
            raise InternalInvariantError("state row left incomplete")
        groups.append(Group(lo, hi, "".join(str(b) for b in row), weight))

    if sum(g.weight for g in groups) != 1:
        raise InternalInvariantError("color runs do not cover [1:delta]")
    return GroupedSchedule(delta, tuple(p_u), tuple(groups))


@dataclass(frozen=True)
class ScheduleTrace:
    """Every intermediate of the scheduling pipeline, for reports and tests."""

    integer_net: LineNetwork
    scale: Fraction
    multiplicities: Multiplicities
    colors: ColorAssignment
    grouped: GroupedSchedule

    @property
    def schedule(self) -> Schedule:
        return self.grouped.to_schedule()

    @property
    def rate(self) -> Fraction:
        """``M / Delta`` rescaled to the original capacities."""
        return Fraction(self.multiplicities.M, self.colors.delta) * self.scale


def trace_schedule(net: LineNetwork) -> ScheduleTrace:
    N = _require_relays(net)
    int_net, scale = integerize(net)
    mult = multiplicities(int_net)
    colors = color_intervals(mult)
    grouped = group_colors(N, colors.delta, colors.intervals)
    return ScheduleTrace(int_net, scale, mult, colors, grouped)


def build_simple_schedule(net: LineNetwork) -> Schedule:
    """A simple schedule whose rate equals the closed-form capacity."""
    return trace_schedule(net).schedule


def rationalize_real(links: Sequence[float], denominator: int = DEFAULT_DENOMINATOR
                     ) -> Tuple[LineNetwork, Fraction]:
    """Round real capacities down to multiples of ``1/denominator``.

    Each ``q_i = floor(l_i * D) / D`` satisfies ``l_i - 1/D < q_i <= l_i``,
    computed exactly from the binary value of the float.
    """
    if isinstance(denominator, bool) or not isinstance(denominator, int) or denominator < 1:
        raise InvalidValueError(f"denominator must be a positive integer, got {denominator!r}")
    q = []
    for v in links:
        v = float(v)
        if not math.isfinite(v) or v <= 0:
            raise InvalidValueError(f"real link capacity must be positive and finite, got {v}")
        qi = Fraction(math.floor(Fraction(v) * denominator), denominator)
        if qi == 0:
            raise ResolutionTooCoarseError(
                f"link {v} rounds to 0 with denominator {denominator}; increase it")
        q.append(qi)
    return LineNetwork(tuple(q)), Fraction(1, denominator)
