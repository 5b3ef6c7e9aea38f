"""Punctured subsets and the exponential number of candidate optimal states.

A *punctured* subset of ``[a:b]`` holds no two consecutive integers; it is
*primitive* when no further element of ``[a:b]`` can be added.  The link
sets crossing full-duplex cuts of an N-relay line are exactly the punctured
subsets of ``[1:N+1]``, and the primitive ones are the cuts that can be the
unique maximum for some choice of capacities.  Their number obeys
``T(n) = T(n-2) + T(n-3)`` and so grows like ``2^(n/3)`` at least.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import CapacityLimitError, InvalidValueError, WitnessNotApplicableError
from .ext import INF, Ext, fmt
from .line_model import (
    Cut,
    LineNetwork,
    cut_crossing_links,
    fd_capacity,
    schedule_rate_fundamental,
    single_state_schedule,
)
from .verify import best_single_states

DEFAULT_MAX_SPAN = 30


class DegenerateCutWarning(UserWarning):
    """``punctured_to_cut`` was applied to the empty set."""


@dataclass(frozen=True)
class PuncturedSet:
    elems: Tuple[int, ...]
    a: int
    b: int

    def __post_init__(self):
        elems = tuple(sorted(self.elems))
        object.__setattr__(self, "elems", elems)
        if any(not self.a <= e <= self.b for e in elems):
            raise InvalidValueError(f"{list(elems)} not within [{self.a}:{self.b}]")
        if any(y - x <= 1 for x, y in zip(elems, elems[1:])):
            raise InvalidValueError(f"{list(elems)} contains consecutive integers")

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)


def is_punctured(elems: Iterable[int]) -> bool:
    s = sorted(elems)
    return len(set(s)) == len(s) and all(y - x > 1 for x, y in zip(s, s[1:]))


def is_primitive(h: PuncturedSet) -> bool:
    members = set(h.elems)
    return all(i - 1 in members or i + 1 in members
               for i in range(h.a, h.b + 1) if i not in members)


def _primitive_tuples(a: int, b: int) -> List[Tuple[int, ...]]:
    # Decide positions left to right.  An excluded position must end up
    # next to a chosen one, so once i-1 is excluded without a chosen i-2,
    # position i is forced in.
    out: List[Tuple[int, ...]] = []
    chosen: List[int] = []

    def rec(i: int, prev_in: bool, prev_covered: bool) -> None:
        if i > b:
            if prev_covered:
                out.append(tuple(chosen))
            return
        if prev_covered:
            rec(i + 1, False, prev_in)
        if not prev_in:
            chosen.append(i)
            rec(i + 1, True, True)
            chosen.pop()

    rec(a, False, True)
    return sorted(out)


def enumerate_primitive(a: int, b: int, max_span: Optional[int] = DEFAULT_MAX_SPAN
                        ) -> List[PuncturedSet]:
    """All primitive punctured subsets of ``[a:b]`` in lexicographic order.

    An empty range has exactly one primitive subset, the empty set.
    """
    if max_span is not None and b - a > max_span:
        raise CapacityLimitError(f"span {b - a} exceeds enumeration bound {max_span}")
    return [PuncturedSet(t, a, b) for t in _primitive_tuples(a, b)]


@lru_cache(maxsize=None)
def _base_counts() -> Dict[int, int]:
    return {k: len(_primitive_tuples(1, k)) for k in (1, 2, 3)}


def count_primitive_recurrence(n: int) -> int:
    """Number of primitive subsets of ``[1:n]`` via ``T(n) = T(n-2) + T(n-3)``."""
    if n < 1:
        raise InvalidValueError("T(n) is defined for n >= 1")
    base = _base_counts()
    if n <= 3:
        return base[n]
    t1, t2, t3 = base[3], base[2], base[1]  # T(k-1), T(k-2), T(k-3)
    for _ in range(4, n + 1):
        t1, t2, t3 = t2 + t3, t1, t2
    return t1


def exceeds_growth_bound(t: int, n: int) -> bool:
    """Exact test of ``t >= 2^(n/3) / 2``, i.e. ``(2t)^3 >= 2^n``."""
    return (2 * t) ** 3 >= 2 ** n


def cut_to_punctured(cut: Iterable[int], n: int) -> PuncturedSet:
    """Links crossing the full-duplex cut ``A``; always a punctured set."""
    return PuncturedSet(tuple(cut_crossing_links(cut, n)), 1, n + 1)


def punctured_to_cut(b_set: PuncturedSet, n: int) -> Cut:
    """Inverse of :func:`cut_to_punctured` on punctured subsets of ``[1:N+1]``.

    ``A = {i in [1:N] : i > max(B)} u (B minus {N+1})``.  For the empty set the
    maximum is taken as 0 and a :class:`DegenerateCutWarning` is issued.
    """
    elems = set(b_set.elems)
    if any(not 1 <= e <= n + 1 for e in elems):
        raise InvalidValueError(f"{sorted(elems)} not within [1:{n + 1}]")
    if not elems:
        warnings.warn("empty punctured set mapped with sup = 0", DegenerateCutWarning,
                      stacklevel=2)
    top = max(elems, default=0)
    tail = {i for i in range(1, n + 1) if i > top}
    return frozenset(tail | (elems - {n + 1}))


def objective_g1(cut: Iterable[int], net: LineNetwork) -> Ext:
    """Full-duplex value of cut ``A``."""
    return sum_links(cut_crossing_links(cut, net.n_relays), net)


def objective_g2(b_set: Iterable[int], net: LineNetwork) -> Ext:
    return sum_links(b_set, net)


def sum_links(indices: Iterable[int], net: LineNetwork) -> Ext:
    total: Ext = Fraction(0)
    for i in indices:
        total = total + net.link(i)
    return total


def _require_primitive_cut(cut: Iterable[int], n: int) -> Tuple[Cut, PuncturedSet]:
    a = frozenset(cut)
    b_set = cut_to_punctured(a, n)
    if not is_primitive(b_set) or punctured_to_cut(b_set, n) != a:
        raise WitnessNotApplicableError(
            f"cut {sorted(a)} does not come from a primitive punctured subset of [1:{n + 1}]")
    return a, b_set


def witness_network_for_cut(cut: Iterable[int], n: int) -> LineNetwork:
    """Capacity 1 on the links crossing ``A`` and infinity elsewhere.

    On this network the state in which exactly the relays of ``A^c``
    transmit reaches the full-duplex capacity 1.
    """
    _, b_set = _require_primitive_cut(cut, n)
    members = set(b_set.elems)
    return LineNetwork(tuple(1 if i in members else INF for i in range(1, n + 2)))


def zero_one_witness(b_set: PuncturedSet) -> LineNetwork:
    """Capacity 1 on ``B`` and 0 elsewhere; ``B`` then uniquely maximizes the link sum."""
    members = set(b_set.elems)
    return LineNetwork(tuple(1 if i in members else 0 for i in range(b_set.a, b_set.b + 1)),
                       allow_degenerate=True)


def transmit_state(cut: Iterable[int], n: int) -> str:
    """Indicator of ``A^c``: relays outside the cut transmit."""
    a = frozenset(cut)
    return "".join("0" if i in a else "1" for i in range(1, n + 1))


def candidate_cuts(n: int, max_span: Optional[int] = DEFAULT_MAX_SPAN) -> List[Cut]:
    """Possible maximum full-duplex cuts: one per primitive subset of ``[1:N+1]``."""
    return [punctured_to_cut(h, n) for h in enumerate_primitive(1, n + 1, max_span)]


@dataclass(frozen=True)
class WitnessReport:
    cut: Cut
    state: str
    fd_capacity: Ext
    state_rate: Ext
    optimal_states: Tuple[str, ...]
    unique_among_candidates: bool

    @property
    def unique_among_all(self) -> bool:
        return self.optimal_states == (self.state,)


def witness_check(cut: Iterable[int], n: int, max_n: Optional[int] = 20) -> WitnessReport:
    """Scan all single-state schedules on the witness network of ``A``.

    ``unique_among_candidates`` restricts the competition to the states
    ``1_{A'^c}`` of the other candidate maximum cuts ``A'``.
    """
    a, _ = _require_primitive_cut(cut, n)
    net = witness_network_for_cut(a, n)
    target = transmit_state(a, n)
    best, winners = best_single_states(net, max_n)
    candidates = {transmit_state(c, n) for c in candidate_cuts(n)}
    competing = [s for s in winners if s in candidates]
    rate = schedule_rate_fundamental(single_state_schedule(target), net)
    return WitnessReport(a, target, fd_capacity(net), rate, tuple(winners),
                         competing == [target] and rate == best)


@dataclass(frozen=True)
class LowerBoundCertificate:
    relays: int
    enumerated: int
    recurrence: int
    growth_bound_holds: Optional[bool]
    growth_ratio: Optional[Fraction]

    @property
    def agree(self) -> bool:
        return self.enumerated == self.recurrence

    def to_json(self) -> dict:
        n = self.relays + 1
        return {
            "N": self.relays,
            "n": n,
            "enumerated": self.enumerated,
            "recurrence": self.recurrence,
            "agree": self.agree,
            "bound": f"2^({n}/3)/2",
            "bound_holds": self.growth_bound_holds,
            "growth_ratio": None if self.growth_ratio is None else fmt(self.growth_ratio),
        }


def lower_bound_certificate(n_relays: int, max_span: Optional[int] = DEFAULT_MAX_SPAN
                            ) -> LowerBoundCertificate:
    """Count the candidate optimal states of an N-relay line two ways."""
    if n_relays < 1:
        raise InvalidValueError("need at least one relay")
    n = n_relays + 1
    enumerated = len(enumerate_primitive(1, n, max_span))
    t = count_primitive_recurrence(n)
    holds = exceeds_growth_bound(t, n) if n >= 4 else None
    ratio = Fraction(t, count_primitive_recurrence(n - 1))
    return LowerBoundCertificate(n_relays, enumerated, t, holds, ratio)
