"""Polynomial reduction from 3SAT to the half-duplex path decision problem.

Stages, each kept as a snapshot:

1. Gadget chain (``g_b``): one gadget ``t_i -> v_ij -> r_i`` per clause,
   chained from S to D, with a forbidden pair for every two complementary
   literals in different clauses.
2. Expanded graph (``g_b_star``): every literal vertex with several
   forbidden partners becomes a path of copies, one per partner, each
   wrapped as ``a -> v -> b``; now each vertex sits in at most one
   forbidden pair.
3. Merged graph (``g_b_bullet``): both copies of a forbidden pair merge into
   one ``f`` vertex and capacities ``Z``/infinity make a mismatched
   ``a -> f -> b`` pass cost ``Z/2``.  Satisfiable formulas are exactly
   those whose merged graph has a simple S-D path of half-duplex capacity
   at least ``Z``.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..errors import CapacityLimitError, InternalInvariantError, InvalidValueError
from ..ext import INF, Ext, ext, fmt, is_inf
from .cnf import Cnf
from .graph import CapGraph, Lit, VertexInfo, find_hd_path, path_hd_capacity, simple_paths_at_least

Pair = Tuple[str, str]

# |V| and |E| of the final graph stay below POLY_C * (L + 1)^2 for L literals.
POLY_C = 6


def _lid(lit: Lit) -> str:
    # the literal position is a single digit, so "ij" is unambiguous
    return f"{lit[0]}{lit[1]}"


def literal_label(lit: Lit) -> str:
    return f"v{_lid(lit)}"


def copy_label(kind: str, lit: Lit, partner: Lit) -> str:
    return f"{kind}_{_lid(lit)}_{_lid(partner)}"


def _complementary(a, b) -> bool:
    return a[0] == b[0] and a[1] != b[1]


def build_gadget_chain(cnf: Cnf) -> Tuple[CapGraph, List[Pair]]:
    g = CapGraph()
    m = len(cnf.clauses)
    prev = g.source
    for i, clause in enumerate(cnf.clauses, start=1):
        t, r = f"t{i}", f"r{i}"
        g.add_vertex(t, VertexInfo("t"))
        g.add_edge(prev, t)
        for j in range(1, len(clause) + 1):
            v = literal_label((i, j))
            g.add_vertex(v, VertexInfo("v", (i, j)))
            g.add_edge(t, v)
        g.add_vertex(r, VertexInfo("r"))
        for j in range(1, len(clause) + 1):
            g.add_edge(literal_label((i, j)), r)
        prev = r
    g.add_edge(prev, g.dest)

    forbidden = []
    for i in range(1, m + 1):
        for k in range(i + 1, m + 1):
            for j, p in enumerate(cnf.clauses[i - 1], start=1):
                for l, q in enumerate(cnf.clauses[k - 1], start=1):
                    if _complementary(p, q):
                        forbidden.append((literal_label((i, j)), literal_label((k, l))))
    return g, sorted(forbidden, key=lambda pr: (g.vertices[pr[0]].lit, g.vertices[pr[1]].lit))


def expand_forbidden(g_b: CapGraph, forbidden: List[Pair]) -> Tuple[CapGraph, List[Pair]]:
    g = g_b.copy()
    partners: Dict[str, List[Lit]] = {}
    for x, y in forbidden:
        partners.setdefault(x, []).append(g_b.vertices[y].lit)
        partners.setdefault(y, []).append(g_b.vertices[x].lit)

    for x, plist in partners.items():
        lit = g_b.vertices[x].lit
        preds, succs = g.predecessors(x), g.successors(x)
        g.remove_vertex(x)
        chain = []
        for p in sorted(plist):
            a, v, b = (copy_label(k, lit, p) for k in ("a", "v", "b"))
            g.add_vertex(a, VertexInfo("a", lit, p))
            g.add_vertex(v, VertexInfo("v", lit, p))
            g.add_vertex(b, VertexInfo("b", lit, p))
            g.add_edge(a, v)
            g.add_edge(v, b)
            chain.append((a, b))
        for u in preds:
            g.add_edge(u, chain[0][0])
        for (_, b), (a, _) in zip(chain, chain[1:]):
            g.add_edge(b, a)
        for w in succs:
            g.add_edge(chain[-1][1], w)

    forbidden_star = []
    for x, y in forbidden:
        lx, ly = g_b.vertices[x].lit, g_b.vertices[y].lit
        forbidden_star.append((copy_label("v", lx, ly), copy_label("v", ly, lx)))
    return g, forbidden_star


def merge_and_capacitate(g_star: CapGraph, forbidden_star: List[Pair], z) -> CapGraph:
    z = ext(z)
    if is_inf(z) or z <= 0:
        raise InvalidValueError("Z must be positive and finite")
    g = g_star.copy()
    for x, y in forbidden_star:
        ix, iy = g.vertices[x], g.vertices[y]
        if ix.lit >= iy.lit:
            raise InternalInvariantError(f"forbidden pair {x}, {y} not in clause order")
        (ax,), (bx,) = g.predecessors(x), g.successors(x)
        (ay,), (by,) = g.predecessors(y), g.successors(y)
        f = copy_label("f", ix.lit, iy.lit)
        g.remove_vertex(x)
        g.remove_vertex(y)
        g.add_vertex(f, VertexInfo("f", ix.lit, iy.lit))
        g.add_edge(ax, f, z)
        g.add_edge(f, bx, INF)
        g.add_edge(ay, f, INF)
        g.add_edge(f, by, z)
    return g


@dataclass(frozen=True)
class ReductionArtifacts:
    g_b: CapGraph
    g_b_star: CapGraph
    g_b_bullet: CapGraph
    forbidden: List[Pair]
    forbidden_star: List[Pair]
    z: Ext

    def to_json(self) -> dict:
        def snap(g: CapGraph) -> dict:
            return {"vertices": list(g.vertices), **g.to_json()}

        return {
            "z": fmt(self.z),
            "g_b": snap(self.g_b),
            "g_b_star": snap(self.g_b_star),
            "g_b_bullet": snap(self.g_b_bullet),
            "forbidden": [list(p) for p in self.forbidden],
            "forbidden_star": [list(p) for p in self.forbidden_star],
        }


def polynomial_bound(cnf: Cnf) -> int:
    n_lits = sum(len(c) for c in cnf.clauses)
    return POLY_C * (n_lits + 1) ** 2


def reduce_3sat(cnf: Cnf, z=1) -> ReductionArtifacts:
    g_b, forbidden = build_gadget_chain(cnf)
    g_star, forbidden_star = expand_forbidden(g_b, forbidden)
    seen = [v for pair in forbidden_star for v in pair]
    if len(seen) != len(set(seen)):
        raise InternalInvariantError("a vertex occurs in two forbidden pairs")
    g_bullet = merge_and_capacitate(g_star, forbidden_star, z)
    bound = polynomial_bound(cnf)
    if g_bullet.n_vertices > bound or g_bullet.n_edges > bound:
        raise InternalInvariantError("reduction exceeded its polynomial size bound")
    return ReductionArtifacts(g_b, g_star, g_bullet, forbidden, forbidden_star, ext(z))


def chosen_literals(path: List[str], g: CapGraph) -> Dict[int, List[int]]:
    """Literal positions a path walks through, per clause."""
    out: Dict[int, List[int]] = {}
    for label in path:
        info = g.vertices[label]
        if info.role in ("v", "a") and info.lit is not None:
            i, j = info.lit
            if j not in out.setdefault(i, []):
                out[i].append(j)
    return out


def extract_assignment(path: List[str], g: CapGraph, cnf: Cnf) -> Optional[Dict[int, bool]]:
    """Make the literal chosen in each clause true; None if that is contradictory."""
    assignment: Dict[int, bool] = {}
    for i, js in chosen_literals(path, g).items():
        for j in js:
            var, neg = cnf.literal(i, j)
            value = not neg
            if assignment.setdefault(var, value) != value:
                return None
    for v in range(1, cnf.num_vars + 1):
        assignment.setdefault(v, False)
    return assignment


def rule_violations(path: List[str], g: CapGraph) -> List[str]:
    """f-vertices visited twice (rule 1) or entered and left on different copies (rule 2)."""
    problems = []
    f_seen = set()
    for k, label in enumerate(path):
        if g.vertices[label].role != "f":
            continue
        if label in f_seen:
            problems.append(f"{label} visited twice")
        f_seen.add(label)
        before = g.vertices[path[k - 1]]
        after = g.vertices[path[k + 1]] if k + 1 < len(path) else None
        if (before.role != "a" or after is None or after.role != "b"
                or (before.lit, before.partner) != (after.lit, after.partner)):
            problems.append(f"{path[k - 1]} -> {label} -> {path[k + 1] if after else '?'}")
    return problems


@dataclass
class ReductionReport:
    satisfiable: bool
    path_found: bool
    path: Optional[List[str]] = None
    path_capacity: Optional[Ext] = None
    assignment: Optional[Dict[int, bool]] = None
    assignment_ok: Optional[bool] = None
    accepted_paths: int = 0
    rules_ok: bool = True
    violations: List[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.satisfiable == self.path_found

    @property
    def ok(self) -> bool:
        return self.agree and self.rules_ok and self.assignment_ok is not False

    def to_json(self) -> dict:
        return {
            "satisfiable": self.satisfiable,
            "path_found": self.path_found,
            "agree": self.agree,
            "path": self.path,
            "path_capacity": None if self.path_capacity is None else fmt(self.path_capacity),
            "assignment": None if self.assignment is None else
            {str(k): v for k, v in sorted(self.assignment.items())},
            "assignment_ok": self.assignment_ok,
            "accepted_paths": self.accepted_paths,
            "rules_ok": self.rules_ok,
            "ok": self.ok,
        }


def verify_reduction(cnf: Cnf, z=1, max_vars: Optional[int] = 8, max_clauses: Optional[int] = 6,
                     check_rules: bool = True) -> ReductionReport:
    """Cross-check truth-table satisfiability against path search on the merged graph.

    With ``check_rules`` every simple path of capacity at least ``Z`` is
    enumerated and checked against the two traversal rules.
    """
    if max_vars is not None and cnf.num_vars > max_vars:
        raise CapacityLimitError(f"{cnf.num_vars} variables exceeds the bound {max_vars}")
    if max_clauses is not None and len(cnf.clauses) > max_clauses:
        raise CapacityLimitError(f"{len(cnf.clauses)} clauses exceeds the bound {max_clauses}")

    art = reduce_3sat(cnf, z)
    g = art.g_b_bullet
    report = ReductionReport(satisfiable=cnf.is_satisfiable(), path_found=False)

    path = find_hd_path(g, art.z, max_vertices=None)
    if path is not None:
        report.path_found = True
        report.path = path
        report.path_capacity = path_hd_capacity(path, g)
        report.assignment = extract_assignment(path, g, cnf)
        report.assignment_ok = report.assignment is not None and cnf.evaluate(report.assignment)

    if check_rules:
        for _, p in simple_paths_at_least(g, art.z, max_vertices=None):
            report.accepted_paths += 1
            bad = rule_violations(p, g)
            if bad:
                report.rules_ok = False
                report.violations.extend(bad)
            elif extract_assignment(p, g, cnf) is None:
                report.rules_ok = False
                report.violations.append("contradictory literals on " + "-".join(p))
    return report
