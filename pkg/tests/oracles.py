"""Slow, independent reference implementations used only by the tests.

They deliberately avoid the library's helpers: cuts are evaluated straight
from node sides and node modes, punctured sets by scanning every subset,
satisfiability by a truth table and path capacity by networkx.
"""

import itertools
import math
import random
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple


def node_transmits(state: str, node: int, n: int) -> bool:
    if node == 0:
        return True
    if node == n + 1:
        return False
    return state[node - 1] == "1"


def cut_value(entries: Dict[str, Fraction], links: Sequence, cut: FrozenSet[int]) -> object:
    """Expected flow across ``cut``; the destination side holds ``cut`` and N+1."""
    n = len(links) - 1
    dest_side = set(cut) | {n + 1}
    total = Fraction(0)
    for i in range(1, n + 2):
        tx, rx = i - 1, i
        if tx in dest_side or rx not in dest_side:
            continue
        if math.isinf(links[i - 1]):
            return math.inf
        active = sum((w for s, w in entries.items()
                      if node_transmits(s, tx, n) and not node_transmits(s, rx, n)),
                     Fraction(0))
        total += active * links[i - 1]
    return total


def min_cut(entries: Dict[str, Fraction], links: Sequence) -> object:
    n = len(links) - 1
    return min(cut_value(entries, links, frozenset(c))
               for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k))


def harmonic_bound(links: Sequence) -> Fraction:
    return min(Fraction(a * b, a + b) for a, b in zip(links, links[1:]))


def lp_capacity(links: Sequence[float]) -> float:
    """max over schedules of min over all cuts, by linear programming."""
    from scipy.optimize import linprog

    n = len(links) - 1
    states = ["".join(bits) for bits in itertools.product("01", repeat=n)]
    k = len(states)
    a_ub, b_ub = [], []
    for size in range(n + 1):
        for cut in itertools.combinations(range(1, n + 1), size):
            # t - sum_s lambda_s * value_s(cut) <= 0
            row = [-float(cut_value({s: Fraction(1)}, [Fraction(x) for x in links], frozenset(cut)))
                   for s in states]
            a_ub.append(row + [1.0])
            b_ub.append(0.0)
    c = [0.0] * k + [-1.0]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=[[1.0] * k + [0.0]], b_eq=[1.0],
                  bounds=[(0, None)] * (k + 1), method="highs")
    assert res.success
    return -res.fun


def is_punctured(subset: Sequence[int]) -> bool:
    return all(y - x >= 2 for x, y in zip(subset, subset[1:]))


def primitive_sets(a: int, b: int) -> List[Tuple[int, ...]]:
    """Scan every subset of [a:b]; keep punctured ones no element can be added to."""
    universe = list(range(a, b + 1))
    punct = set()
    for mask in range(2 ** len(universe)):
        sub = tuple(x for k, x in enumerate(universe) if mask >> k & 1)
        if is_punctured(sub):
            punct.add(sub)
    out = []
    for sub in punct:
        if all(tuple(sorted(sub + (x,))) not in punct for x in universe if x not in sub):
            out.append(sub)
    return sorted(out)


def satisfiable(clauses: Sequence[Sequence[int]], num_vars: int) -> bool:
    for bits in itertools.product((False, True), repeat=num_vars):
        if all(any(bits[abs(x) - 1] == (x > 0) for x in c) for c in clauses):
            return True
    return False


def best_path_capacity(edges: Sequence[Tuple[str, str, object]], source: str = "S",
                       dest: str = "D"):
    """Max over networkx simple paths of min hm of consecutive edges."""
    import networkx as nx

    g = nx.DiGraph()
    for u, v, c in edges:
        g.add_edge(u, v, cap=c)
    if source not in g or dest not in g:
        return None

    def hm(x, y):
        if math.isinf(x):
            return y
        if math.isinf(y):
            return x
        return Fraction(x) * y / (x + y)

    best = None
    for p in nx.all_simple_paths(g, source, dest):
        caps = [g[u][v]["cap"] for u, v in zip(p, p[1:])]
        val = caps[0] if len(caps) == 1 else min(hm(x, y) for x, y in zip(caps, caps[1:]))
        if best is None or val > best:
            best = val
    return best


def random_rational_links(rng: random.Random, n_relays: int, num_max: int = 100,
                          den_max: int = 10) -> Tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(1, num_max), rng.randint(1, den_max))
                 for _ in range(n_relays + 1))
