"""Brute-force certificates for line-network rates and capacities.

Everything here enumerates: all ``2^N`` cuts, or all single-state
schedules.  The bound on N is a guard against accidental exponential
runs and can be lifted per call.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import CapacityLimitError
from .ext import Ext, fmt, is_inf
from .line_model import (
    Cut,
    LineNetwork,
    Schedule,
    _check_compatible,
    _require_relays,
    all_states,
    bottleneck_relay,
    closed_form_capacity,
    cut_value,
    link_fractions,
    schedule_rate_fundamental,
    single_state_schedule,
)
from .scheduler import DEFAULT_DENOMINATOR, build_simple_schedule, rationalize_real

DEFAULT_MAX_EXHAUSTIVE = 20


def check_bound(n: int, max_n: Optional[int], what: str = "N") -> None:
    if max_n is not None and n > max_n:
        raise CapacityLimitError(
            f"{what} = {n} exceeds the exhaustive bound {max_n}; the search is exponential")


def fundamental_cuts(n: int) -> List[Cut]:
    """The empty cut followed by the suffixes ``[i:N]`` for i = N..1."""
    if n < 1:
        raise ValueError("need at least one relay")
    return [frozenset()] + [frozenset(range(i, n + 1)) for i in range(n, 0, -1)]


def mask_to_cut(mask: int) -> Cut:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def min_cut_exhaustive(sched: Schedule, net: LineNetwork,
                       max_n: Optional[int] = DEFAULT_MAX_EXHAUSTIVE) -> Tuple[Ext, Cut]:
    """Minimum expected cut over all ``2^N`` cuts.

    Ties go to the cut with the smallest bitmask (relay ``i`` is bit ``i-1``).
    """
    n = _check_compatible(sched, net)
    check_bound(n, max_n)
    # Per-link expected capacity; brought to a common denominator so the
    # 2^N inner loop runs on plain ints.  None marks an infinite link.
    per_link = [None if is_inf(l) else f * l
                for f, l in zip(link_fractions(sched, net), net.links)]
    den = math.lcm(*(v.denominator for v in per_link if v is not None)) if any(
        v is not None for v in per_link) else 1
    ints = [None if v is None else v.numerator * (den // v.denominator) for v in per_link]

    best_val: Optional[int] = None
    best_mask = 0
    for mask in range(2 ** n):
        # link i crosses iff i in A u {N+1} and i-1 in A^c u {0}
        total = 0
        for i in range(1, n + 2):
            in_a = i == n + 1 or (mask >> (i - 1)) & 1
            prev_out = i == 1 or not (mask >> (i - 2)) & 1
            if in_a and prev_out:
                if ints[i - 1] is None:
                    total = None
                    break
                total += ints[i - 1]
        if total is None:
            continue
        if best_val is None or total < best_val:
            best_val, best_mask = total, mask
    if best_val is None:
        return math.inf, frozenset()
    return Fraction(best_val, den), mask_to_cut(best_mask)


def min_fundamental_cut(sched: Schedule, net: LineNetwork) -> Ext:
    """Minimum expected cut over the N+1 fundamental cuts only."""
    n = _check_compatible(sched, net)
    return min(cut_value(sched, c, net) for c in fundamental_cuts(n))


@dataclass(frozen=True)
class Certificate:
    rate: Ext
    bound: Ext
    optimal: bool
    bottleneck: int

    def to_json(self) -> dict:
        return {"rate": fmt(self.rate), "bound": fmt(self.bound),
                "optimal": self.optimal, "bottleneck": self.bottleneck}


def certify_schedule_optimal(sched: Schedule, net: LineNetwork) -> Certificate:
    """Compare a schedule's rate with the converse bound.

    The bound ``min_i hm(l_i, l_{i+1})`` caps every schedule's rate, so
    equality certifies that ``sched`` is optimal.
    """
    rate = schedule_rate_fundamental(sched, net)
    bound = closed_form_capacity(net)
    return Certificate(rate, bound, rate == bound, bottleneck_relay(net))


@dataclass(frozen=True)
class SandwichReport:
    denominator: int
    epsilon: Fraction
    capacity_q: Fraction       # capacity of the rounded network
    rate_q_schedule: float     # rounded network's optimal schedule, run on the real links
    capacity_real: float       # closed form evaluated on the real links
    checks: Tuple[bool, bool, bool, bool]
    tolerance: float

    @property
    def ok(self) -> bool:
        return all(self.checks)

    def to_json(self) -> dict:
        return {
            "denominator": self.denominator,
            "epsilon": fmt(self.epsilon),
            "capacity_q": fmt(self.capacity_q),
            "rate_q_schedule_on_real": self.rate_q_schedule,
            "capacity_real": self.capacity_real,
            "checks": list(self.checks),
            "ok": self.ok,
        }


def epsilon_sandwich_check(links: Sequence[float], denominator: int = DEFAULT_DENOMINATOR,
                           tol: float = 1e-9) -> SandwichReport:
    """Check ``C(q) <= rate(q-schedule on l) <= C(l) <= C(q) + eps`` numerically.

    ``checks`` holds, in order: every rounded link within ``[l_i - eps, l_i]``,
    then the three links of the chain from left to right.
    """
    q_net, eps = rationalize_real(links, denominator)
    sched = build_simple_schedule(q_net)
    cap_q = closed_form_capacity(q_net)

    real = [float(v) for v in links]
    frac = link_fractions(sched, q_net)
    rate_on_real = min(float(f) * l for f, l in zip(frac, real))
    cap_real = min(a * b / (a + b) for a, b in zip(real, real[1:]))

    checks = (
        all(l - float(eps) - tol <= float(q) <= l + tol for q, l in zip(q_net.links, real)),
        float(cap_q) <= rate_on_real + tol,
        rate_on_real <= cap_real + tol,
        cap_real <= float(cap_q) + float(eps) + tol,
    )
    return SandwichReport(denominator, eps, cap_q, rate_on_real, cap_real, checks, tol)


def best_single_states(net: LineNetwork, max_n: Optional[int] = DEFAULT_MAX_EXHAUSTIVE
                       ) -> Tuple[Ext, List[str]]:
    """Best rate reachable by running one state all the time, and its maximizers."""
    n = _require_relays(net)
    check_bound(n, max_n)
    best: Optional[Ext] = None
    winners: List[str] = []
    for s in all_states(n):
        r = schedule_rate_fundamental(single_state_schedule(s), net)
        if best is None or r > best:
            best, winners = r, [s]
        elif r == best:
            winners.append(s)
    return best, winners

