"""Directed capacity graphs and exact half-duplex path search.

The half-duplex capacity of a path is the smallest ``hm(c_in, c_out)`` over
its interior vertices, every relay on the path alternating between
receiving on its in-edge and sending on its out-edge.  A direct S-D edge
has no relay and is worth its own capacity.
"""

import json
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import CapacityLimitError, InvalidValueError, PathError
from ..ext import INF, Ext, ext, fmt, hm, is_inf

DEFAULT_MAX_VERTICES = 24

Lit = Tuple[int, int]  # (clause index, literal position), both 1-based


@dataclass(frozen=True)
class VertexInfo:
    role: str = "plain"  # source, dest, t, r, v, a, b, f or plain
    lit: Optional[Lit] = None
    partner: Optional[Lit] = None


class CapGraph:
    """Simple digraph with extended-rational edge capacities.

    Adding an edge that already exists keeps the larger capacity: along a
    vertex path only the best parallel edge matters.
    """

    def __init__(self, source: str = "S", dest: str = "D"):
        if source == dest:
            raise InvalidValueError("source and destination must differ")
        self.source = source
        self.dest = dest
        self.vertices: Dict[str, VertexInfo] = {}
        self._succ: Dict[str, Dict[str, Ext]] = {}
        self.add_vertex(source, VertexInfo("source"))
        self.add_vertex(dest, VertexInfo("dest"))

    def add_vertex(self, label: str, info: Optional[VertexInfo] = None) -> None:
        if label in self.vertices:
            if info is not None and info != self.vertices[label]:
                raise InvalidValueError(f"vertex {label!r} redefined")
            return
        self.vertices[label] = info or VertexInfo()
        self._succ[label] = {}

    def add_edge(self, u: str, v: str, cap=INF) -> None:
        if u == v:
            raise InvalidValueError(f"self-loop on {u!r}")
        try:
            cap = ext(cap)
        except (TypeError, ValueError) as exc:
            raise InvalidValueError(str(exc)) from exc
        if cap == 0:
            raise InvalidValueError(f"edge {u}->{v} needs a positive capacity")
        self.add_vertex(u)
        self.add_vertex(v)
        old = self._succ[u].get(v)
        self._succ[u][v] = cap if old is None else max(old, cap)

    def remove_vertex(self, label: str) -> None:
        if label in (self.source, self.dest):
            raise InvalidValueError("cannot remove source or destination")
        del self.vertices[label]
        del self._succ[label]
        for nbrs in self._succ.values():
            nbrs.pop(label, None)

    def set_capacity(self, u: str, v: str, cap) -> None:
        if v not in self._succ.get(u, {}):
            raise InvalidValueError(f"no edge {u}->{v}")
        self._succ[u][v] = ext(cap)

    def capacity(self, u: str, v: str) -> Ext:
        try:
            return self._succ[u][v]
        except KeyError:
            raise PathError(f"no edge {u}->{v}") from None

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._succ.get(u, {})

    def successors(self, u: str) -> List[str]:
        return sorted(self._succ[u])

    def predecessors(self, v: str) -> List[str]:
        return sorted(u for u, nbrs in self._succ.items() if v in nbrs)

    def edges(self) -> List[Tuple[str, str, Ext]]:
        return [(u, v, c) for u in self.vertices for v, c in self._succ[u].items()]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self._succ.values())

    def copy(self) -> "CapGraph":
        g = CapGraph(self.source, self.dest)
        for label, info in self.vertices.items():
            g.add_vertex(label, info)
        for u, v, c in self.edges():
            g._succ[u][v] = c
        return g

    def scaled(self, factor) -> "CapGraph":
        g = self.copy()
        factor = ext(factor)
        for u, v, c in self.edges():
            g._succ[u][v] = c if is_inf(c) else c * factor
        return g

    def to_json(self) -> dict:
        return {"source": self.source, "dest": self.dest,
                "edges": [[u, v, fmt(c)] for u, v, c in self.edges()]}

    @classmethod
    def from_json(cls, data) -> "CapGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            g = cls(str(data["source"]), str(data["dest"]))
            for u, v, c in data["edges"]:
                g.add_edge(str(u), str(v), str(c))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidValueError):
                raise
            raise InvalidValueError(f"malformed graph JSON: {exc}") from exc
        return g

    @classmethod
    def line(cls, caps: Sequence) -> "CapGraph":
        """``S -> 1 -> ... -> D`` with the given edge capacities."""
        g = cls()
        labels = ["S"] + [str(i) for i in range(1, len(caps))] + ["D"]
        for u, v, c in zip(labels, labels[1:], caps):
            g.add_edge(u, v, c)
        return g


def path_hd_capacity(path: Sequence[str], g: CapGraph) -> Ext:
    if len(path) < 2:
        raise PathError("a path needs at least one edge")
    if len(set(path)) != len(path):
        raise PathError("path repeats a vertex")
    caps = [g.capacity(u, v) for u, v in zip(path, path[1:])]
    if len(caps) == 1:
        return caps[0]
    return min(hm(x, y) for x, y in zip(caps, caps[1:]))


def _check_size(g: CapGraph, max_vertices: Optional[int]) -> None:
    if max_vertices is not None and g.n_vertices > max_vertices:
        raise CapacityLimitError(
            f"graph has {g.n_vertices} vertices, above the search bound {max_vertices}")


def _search(g: CapGraph, threshold: Optional[Ext]) -> Iterator[Tuple[Ext, List[str]]]:
    """Depth-first walk over simple S-D paths in lexicographic order.

    With a ``threshold``, only paths worth at least that much are yielded
    and branches that cannot reach it are cut.  Without one, yields a
    strictly improving sequence of paths.
    """
    best: List[Optional[Ext]] = [None]
    path = [g.source]
    on_path = {g.source}

    def promising(bound: Ext) -> bool:
        if threshold is not None:
            return bound >= threshold
        return best[0] is None or bound > best[0]

    def rec(running: Ext, last: Optional[Ext]):
        u = path[-1]
        for v in g.successors(u):
            if v in on_path:
                continue
            c = g._succ[u][v]
            value = c if last is None else min(running, hm(last, c))
            if v == g.dest:
                if promising(value):
                    if threshold is None:
                        best[0] = value
                    yield value, list(path) + [v]
                continue
            # every later hm term is at most the capacity of the edge it starts with
            if not promising(min(value, c)):
                continue
            path.append(v)
            on_path.add(v)
            yield from rec(value, c)
            path.pop()
            on_path.remove(v)

    yield from rec(INF, None)


def best_hd_path(g: CapGraph, max_vertices: Optional[int] = DEFAULT_MAX_VERTICES
                 ) -> Optional[Tuple[Ext, List[str]]]:
    """Best simple S-D path by half-duplex capacity, exhaustively.

    Ties go to the lexicographically smallest vertex sequence.  Returns
    None when the destination is unreachable.
    """
    _check_size(g, max_vertices)
    found = None
    for found in _search(g, None):
        pass
    return found


def find_hd_path(g: CapGraph, z, max_vertices: Optional[int] = DEFAULT_MAX_VERTICES
                 ) -> Optional[List[str]]:
    """First (lexicographic) simple S-D path with capacity at least ``z``."""
    _check_size(g, max_vertices)
    for _, p in _search(g, ext(z)):
        return p
    return None


def hd_path_decision(g: CapGraph, z, max_vertices: Optional[int] = DEFAULT_MAX_VERTICES) -> bool:
    return find_hd_path(g, z, max_vertices) is not None


def simple_paths_at_least(g: CapGraph, z, max_vertices: Optional[int] = DEFAULT_MAX_VERTICES
                          ) -> Iterator[Tuple[Ext, List[str]]]:
    """Every simple S-D path whose half-duplex capacity is at least ``z``."""
    _check_size(g, max_vertices)
    return _search(g, ext(z))
