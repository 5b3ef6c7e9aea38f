"""CNF formulas with at most three literals per clause, plus DIMACS I/O."""

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import InvalidCNFError

Literal = Tuple[int, bool]  # (variable, negated)


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: Tuple[Tuple[Literal, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple((int(v), bool(neg)) for v, neg in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if not clauses:
            raise InvalidCNFError("formula has no clauses")
        for k, clause in enumerate(clauses, start=1):
            if not 1 <= len(clause) <= 3:
                raise InvalidCNFError(f"clause {k} has {len(clause)} literals, need 1 to 3")
            for var, _ in clause:
                if not 1 <= var <= self.num_vars:
                    raise InvalidCNFError(f"clause {k} uses variable {var} outside [1:{self.num_vars}]")

    @classmethod
    def from_ints(cls, clauses: Sequence[Sequence[int]], num_vars: Optional[int] = None) -> "Cnf":
        """Build from DIMACS-style signed integers, e.g. ``[[-1, 2, 3], [4, 1, -2]]``."""
        for c in clauses:
            if any(x == 0 for x in c):
                raise InvalidCNFError("literal 0 is the clause terminator, not a variable")
        if num_vars is None:
            num_vars = max((abs(x) for c in clauses for x in c), default=0)
        return cls(num_vars, tuple(tuple((abs(x), x < 0) for x in c) for c in clauses))

    def to_ints(self) -> List[List[int]]:
        return [[-v if neg else v for v, neg in c] for c in self.clauses]

    def literal(self, i: int, j: int) -> Literal:
        """Literal ``j`` of clause ``i`` (both 1-based)."""
        return self.clauses[i - 1][j - 1]

    def evaluate(self, assignment: Dict[int, bool]) -> bool:
        return all(any(assignment.get(v, False) != neg for v, neg in c) for c in self.clauses)

    def assignments(self) -> Iterator[Dict[int, bool]]:
        for bits in itertools.product((False, True), repeat=self.num_vars):
            yield {v: b for v, b in enumerate(bits, start=1)}

    def satisfying_assignment(self) -> Optional[Dict[int, bool]]:
        """Truth-table search; exponential in ``num_vars``."""
        for a in self.assignments():
            if self.evaluate(a):
                return a
        return None

    def is_satisfiable(self) -> bool:
        return self.satisfying_assignment() is not None

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(str(x) for x in c) + " 0" for c in self.to_ints()]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF: ``c`` comment lines, a ``p cnf V C`` header, 0-terminated clauses."""
    num_vars = num_clauses = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or num_vars is not None:
                raise InvalidCNFError(f"line {lineno}: bad header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise InvalidCNFError(f"line {lineno}: bad header {line!r}") from None
            continue
        if num_vars is None:
            raise InvalidCNFError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise InvalidCNFError(f"line {lineno}: bad literal {tok!r}") from None
            if x == 0:
                if not current:
                    raise InvalidCNFError(f"line {lineno}: empty clause")
                clauses.append(current)
                current = []
            else:
                current.append(x)
    if num_vars is None:
        raise InvalidCNFError("missing 'p cnf' header")
    if current:
        clauses.append(current)
    if len(clauses) != num_clauses:
        raise InvalidCNFError(f"header announces {num_clauses} clauses, found {len(clauses)}")
    if any(abs(x) > num_vars for c in clauses for x in c):
        raise InvalidCNFError("literal exceeds the announced variable count")
    return Cnf.from_ints(clauses, num_vars)


def random_cnf(rng: random.Random, num_vars: int, num_clauses: int, width: int = 3) -> Cnf:
    """Clauses of ``min(width, num_vars)`` distinct variables with random signs."""
    k = min(width, num_vars)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), k)
        clauses.append(tuple((v, rng.random() < 0.5) for v in vs))
    return Cnf(num_vars, tuple(clauses))
