"""Half-duplex line networks: data model, rate evaluators, closed-form capacity.

Node 0 is the source, node N+1 the destination and nodes 1..N are relays.
Link ``i`` (1-indexed) carries ``links[i-1]`` from node i-1 to node i.  A
relay state is a string of ``'0'``/``'1'`` characters, character ``i-1``
being relay ``i`` (``'1'`` = transmit, ``'0'`` = receive).  A cut is a
frozenset of relay indices on the destination side.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from .errors import DegenerateNetworkError, InvalidGainError, InvalidValueError
from .ext import INF, Ext, ext, fmt, hm, is_inf, scale

Cut = FrozenSet[int]
State = str


@dataclass(frozen=True)
class LineNetwork:
    links: Tuple[Ext, ...]
    allow_degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        try:
            links = tuple(ext(v) for v in self.links)
        except (TypeError, ValueError) as exc:
            raise InvalidValueError(str(exc)) from exc
        if not links:
            raise InvalidValueError("a line network needs at least one link")
        if not self.allow_degenerate and any(v == 0 for v in links):
            raise InvalidValueError(
                "zero-capacity link; pass allow_degenerate=True for witness networks"
            )
        object.__setattr__(self, "links", links)

    @property
    def n_relays(self) -> int:
        return len(self.links) - 1

    def link(self, i: int) -> Ext:
        """Capacity of link ``i`` (1-indexed)."""
        return self.links[i - 1]

    def scaled(self, c) -> "LineNetwork":
        c = Fraction(c)
        return LineNetwork(tuple(v if is_inf(v) else v * c for v in self.links),
                           allow_degenerate=self.allow_degenerate)

    def to_json(self) -> dict:
        return {"links": [fmt(v) for v in self.links]}

    @classmethod
    def from_json(cls, data) -> "LineNetwork":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or not isinstance(data.get("links"), list):
            raise InvalidValueError('expected an object with a "links" array')
        return cls(tuple(str(v) for v in data["links"]))


def _check_state(s: State, n: int) -> None:
    if len(s) != n or any(c not in "01" for c in s):
        raise InvalidValueError(f"state {s!r} is not a {n}-bit string")


class Schedule:
    """Sparse distribution over relay states with exact rational weights.

    Zero weights are dropped; the remaining weights must sum to exactly one.
    """

    def __init__(self, entries: Mapping[State, object]):
        clean: Dict[State, Fraction] = {}
        n = None
        for s, w in entries.items():
            if n is None:
                n = len(s)
            _check_state(s, n)
            try:
                w = ext(w)
            except (TypeError, ValueError) as exc:
                raise InvalidValueError(str(exc)) from exc
            if is_inf(w):
                raise InvalidValueError("schedule weights must be finite")
            if w:
                clean[s] = clean.get(s, Fraction(0)) + w
        if not clean:
            raise InvalidValueError("empty schedule")
        total = sum(clean.values())
        if total != 1:
            raise InvalidValueError(f"weights sum to {fmt(total)}, not 1")
        self._entries = dict(sorted(clean.items()))
        self.n_relays = n

    @property
    def entries(self) -> Dict[State, Fraction]:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        return isinstance(other, Schedule) and self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self):
        body = ", ".join(f"{s}: {fmt(w)}" for s, w in self._entries.items())
        return f"Schedule({{{body}}})"

    def is_simple(self) -> bool:
        return len(self._entries) <= self.n_relays + 1

    def to_json(self) -> dict:
        return {"states": [{"s": s, "w": fmt(w)} for s, w in self._entries.items()]}

    @classmethod
    def from_json(cls, data) -> "Schedule":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "states" not in data:
            raise InvalidValueError('expected an object with a "states" array')
        entries: Dict[State, Fraction] = {}
        try:
            for row in data["states"]:
                s, w = str(row["s"]), ext(str(row["w"]))
                entries[s] = entries.get(s, Fraction(0)) + w
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidValueError):
                raise
            raise InvalidValueError(f"malformed schedule JSON: {exc}") from exc
        return cls(entries)


def _require_relays(net: LineNetwork) -> int:
    if net.n_relays < 1:
        raise DegenerateNetworkError(
            f"network has no relay; its capacity is the single link {fmt(net.links[0])}"
        )
    return net.n_relays


def _check_compatible(sched: Schedule, net: LineNetwork) -> int:
    n = _require_relays(net)
    if sched.n_relays != n:
        raise InvalidValueError(
            f"schedule is over {sched.n_relays} relays, network has {n}"
        )
    return n


def from_channel_gains(gains: Iterable) -> List[float]:
    """Point-to-point link capacities ``log2(1 + |h|^2)`` in bits.

    ``gains`` may hold complex coefficients or nonnegative magnitudes.  The
    result is floating point; rationalize it before using the exact core.
    """
    out = []
    for h in gains:
        if isinstance(h, complex):
            if math.isnan(h.real) or math.isnan(h.imag):
                raise InvalidGainError(f"NaN gain {h!r}")
            mag = abs(h)
        else:
            mag = float(h)
            if math.isnan(mag) or mag < 0:
                raise InvalidGainError(f"invalid gain magnitude {h!r}")
        if math.isinf(mag):
            raise InvalidGainError(f"infinite gain {h!r}")
        out.append(math.log2(1.0 + mag * mag))
    if len(out) < 2:
        raise InvalidGainError("need at least two links (one relay)")
    return out


def hm_terms(net: LineNetwork) -> List[Ext]:
    """``hm(l_i, l_{i+1})`` for every relay i in 1..N."""
    n = _require_relays(net)
    return [hm(net.links[i], net.links[i + 1]) for i in range(n)]


def closed_form_capacity(net: LineNetwork) -> Ext:
    return min(hm_terms(net))


def bottleneck_relay(net: LineNetwork) -> int:
    """Smallest relay index attaining the closed-form minimum."""
    terms = hm_terms(net)
    best = min(terms)
    return terms.index(best) + 1


def distributed_capacity_fold(net: LineNetwork) -> List[Ext]:
    """Running minima ``m_1..m_N`` as each relay would forward them."""
    m: Ext = INF
    out = []
    for term in hm_terms(net):
        m = min(term, m)
        out.append(m)
    return out


def fd_capacity(net: LineNetwork) -> Ext:
    """Full-duplex cut-set capacity: the weakest link."""
    return min(net.links)


def state_activates_link(s: State, i: int, n: int) -> bool:
    """True if link ``i`` is active: node i-1 transmits and node i receives."""
    if not 1 <= i <= n + 1:
        raise InvalidValueError(f"link index {i} outside [1:{n + 1}]")
    _check_state(s, n)
    receiver_ok = i == n + 1 or s[i - 1] == "0"
    sender_ok = i == 1 or s[i - 2] == "1"
    return receiver_ok and sender_ok


def activating_states(i: int, n: int) -> List[State]:
    """All states activating link ``i``, in ascending binary order."""
    return [s for s in (format(k, f"0{n}b") for k in range(2 ** n))
            if state_activates_link(s, i, n)]


def cut_crossing_links(cut: Iterable[int], n: int) -> List[int]:
    """Links ``i`` with ``i in A u {N+1}`` and ``i-1 in A^c u {0}``."""
    a = frozenset(cut)
    if any(not 1 <= r <= n for r in a):
        raise InvalidValueError(f"cut {sorted(a)} not within [1:{n}]")
    dest_side = a | {n + 1}
    return [i for i in range(1, n + 2)
            if i in dest_side and (i - 1 == 0 or i - 1 not in a)]


def link_fractions(sched: Schedule, net: LineNetwork) -> List[Fraction]:
    """Fraction of time each link is active under ``sched``."""
    n = _check_compatible(sched, net)
    frac = [Fraction(0)] * (n + 1)
    for s, w in sched.items():
        for i in range(1, n + 2):
            if state_activates_link(s, i, n):
                frac[i - 1] += w
    return frac


def cut_value(sched: Schedule, cut: Iterable[int], net: LineNetwork) -> Ext:
    """Expected capacity crossing ``cut`` when operating with ``sched``."""
    n = _check_compatible(sched, net)
    crossing = cut_crossing_links(cut, n)
    total: Ext = Fraction(0)
    for i in crossing:
        active = sum((w for s, w in sched.items() if state_activates_link(s, i, n)),
                     Fraction(0))
        total = total + scale(active, net.link(i))
    return total


def schedule_rate_fundamental(sched: Schedule, net: LineNetwork) -> Ext:
    """Rate of a fixed schedule, evaluated over the N+1 fundamental cuts."""
    frac = link_fractions(sched, net)
    return min(scale(f, l) for f, l in zip(frac, net.links))


def parse_links(text: str) -> LineNetwork:
    """Parse ``"2,2,3,1"`` or ``"1/2, 1/3, inf"``."""
    parts = [p for p in (t.strip() for t in text.split(",")) if p]
    return LineNetwork(tuple(parts))


def single_state_schedule(s: State) -> Schedule:
    return Schedule({s: 1})


def all_states(n: int) -> Sequence[State]:
    return [format(k, f"0{n}b") for k in range(2 ** n)]
