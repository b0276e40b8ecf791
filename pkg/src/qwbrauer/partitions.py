"""Partitions, bipartitions and the weight poset Lambda_{r,t}.

Nodes are 1-based ``(row, column)`` pairs. Shapes are plain tuples under the
hood so they hash and compare cheaply; the text syntax is comma-separated
parts with ``-`` for the empty partition and ``first|second`` for
bipartitions.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, NamedTuple

from .errors import ContextMismatch, DomainError, InvalidShape, NodeOutOfDiagram

Node = tuple[int, int]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidShape(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def row(self, i: int) -> int:
        """Length of row ``i`` (1-based); 0 beyond the last row."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def nodes(self) -> Iterator[Node]:
        for i, length in enumerate(self, start=1):
            for j in range(1, length + 1):
                yield (i, j)

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(self.row(i) >= x for i, x in enumerate(other, 1))

    def add(self, node: Node) -> "Partition":
        i, j = node
        if node not in addable_nodes(self):
            raise NodeOutOfDiagram(f"{node} is not addable to {self}")
        parts = list(self) + [0]
        parts[i - 1] += 1
        return Partition(x for x in parts if x)

    def remove(self, node: Node) -> "Partition":
        if node not in removable_nodes(self):
            raise NodeOutOfDiagram(f"{node} is not removable from {self}")
        parts = list(self)
        parts[node[0] - 1] -= 1
        return Partition(x for x in parts if x)

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "-"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("-", "", "()", "∅"):
            return EMPTY
        try:
            return cls(int(x) for x in text.strip("()").split(",") if x.strip())
        except ValueError as exc:
            raise InvalidShape(f"cannot parse partition {text!r}") from exc


EMPTY = Partition()


class Bipartition(NamedTuple):
    first: Partition
    second: Partition

    def __str__(self) -> str:
        return f"{self.first}|{self.second}"

    @property
    def sizes(self) -> tuple[int, int]:
        return (self.first.size, self.second.size)

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        if "|" not in text:
            raise InvalidShape(f"bipartition needs a '|': {text!r}")
        a, b = text.split("|", 1)
        return cls(Partition.parse(a), Partition.parse(b))

    def to_json(self) -> list[list[int]]:
        return [list(self.first), list(self.second)]


def bip(first=(), second=()) -> Bipartition:
    """Convenience constructor from plain sequences."""
    return Bipartition(Partition(first), Partition(second))


EMPTY_BIP = Bipartition(EMPTY, EMPTY)


class LambdaPoint(NamedTuple):
    """A weight ``(f, shape)`` of Lambda_{r,t}."""

    f: int
    shape: Bipartition
    r: int
    t: int

    def validate(self) -> "LambdaPoint":
        if not (0 <= self.f <= min(self.r, self.t)):
            raise InvalidShape(f"f={self.f} outside 0..min(r,t) for r={self.r}, t={self.t}")
        if self.shape.sizes != (self.r - self.f, self.t - self.f):
            raise InvalidShape(f"{self.shape} has sizes {self.shape.sizes}, expected "
                               f"({self.r - self.f}, {self.t - self.f})")
        return self

    def __str__(self) -> str:
        return f"({self.f}, {self.shape})"

    def to_json(self) -> dict:
        return {"f": self.f, "shape": self.shape.to_json(), "r": self.r, "t": self.t}


def point(f: int, shape: Bipartition, r: int, t: int) -> LambdaPoint:
    return LambdaPoint(f, shape, r, t).validate()


# -- basic combinatorics -----------------------------------------------------


def conjugate(p: Partition) -> Partition:
    if not p:
        return EMPTY
    return Partition(sum(1 for x in p if x >= j) for j in range(1, p[0] + 1))


def dominance_leq(a: Partition, b: Partition) -> bool:
    """``a`` is dominated by ``b``: every partial sum of ``a`` is at most that of ``b``."""
    if a.size != b.size:
        return False
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a.row(i + 1)
        sb += b.row(i + 1)
        if sa > sb:
            return False
    return True


def addable_nodes(p: Partition) -> list[Node]:
    out = []
    for i in range(1, len(p) + 2):
        j = p.row(i) + 1
        if i == 1 or p.row(i - 1) >= j:
            out.append((i, j))
    return out


def removable_nodes(p: Partition) -> list[Node]:
    return [(i, p.row(i)) for i in range(1, len(p) + 1) if p.row(i) > p.row(i + 1)]


def content(node: Node) -> int:
    return node[1] - node[0]


def hook_length(p: Partition, node: Node) -> int:
    i, j = node
    if not (1 <= i <= len(p) and 1 <= j <= p.row(i)):
        raise NodeOutOfDiagram(f"{node} is not in {p}")
    pc = conjugate(p)
    return p.row(i) + pc.row(j) + 1 - i - j


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    def gen(n: int, cap: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(n, n))


def bipartitions_of(a: int, b: int) -> list[Bipartition]:
    return [Bipartition(x, y) for x in partitions_of(a) for y in partitions_of(b)]


def enumerate_lambda(r: int, t: int) -> list[LambdaPoint]:
    """Lambda_{r,t} sorted by f and then lexicographically by shape."""
    if r < 0 or t < 0:
        raise DomainError("r and t must be nonnegative")
    pts = [LambdaPoint(f, s, r, t) for f in range(min(r, t) + 1) for s in bipartitions_of(r - f, t - f)]
    return sorted(pts, key=lambda x: (x.f, tuple(x.shape.first), tuple(x.shape.second)))


def lambda_leq(f: int, a: Bipartition, g: int, b: Bipartition) -> bool:
    """The partial order on weights: f < g, or f = g with both components dominated."""
    if f != g:
        return f < g
    return dominance_leq(a.first, b.first) and dominance_leq(a.second, b.second)


def lambda_order(x: LambdaPoint, y: LambdaPoint) -> str:
    """Compare two weights: 'less', 'equal', 'greater' or 'incomparable'."""
    if (x.r, x.t) != (y.r, y.t):
        raise ContextMismatch(f"contexts {(x.r, x.t)} and {(y.r, y.t)} differ")
    if x.f == y.f and x.shape == y.shape:
        return "equal"
    if lambda_leq(x.f, x.shape, y.f, y.shape):
        return "less"
    if lambda_leq(y.f, y.shape, x.f, x.shape):
        return "greater"
    return "incomparable"


def e_restricted_partition(p: Partition, e: int | None) -> bool:
    if e is None:
        return True
    return all(p.row(i) - p.row(i + 1) < e for i in range(1, len(p) + 1))


def e_restricted(shape: Bipartition, e: int | None) -> bool:
    return e_restricted_partition(shape.first, e) and e_restricted_partition(shape.second, e)


# -- counting ----------------------------------------------------------------


@lru_cache(maxsize=None)
def standard_count(p: Partition) -> int:
    """Number of standard tableaux of shape ``p`` (hook length formula)."""
    return factorial(p.size) // prod(hook_length(p, x) for x in p.nodes())


@lru_cache(maxsize=None)
def standard_count_by_paths(p: Partition) -> int:
    """Same count by peeling removable nodes (branching rule)."""
    if not p:
        return 1
    return sum(standard_count_by_paths(p.remove(x)) for x in removable_nodes(p))


def std_count(shape: Bipartition) -> int:
    return standard_count(shape.first) * standard_count(shape.second)


def updown_count_formula(f: int, shape: Bipartition, r: int, t: int) -> int:
    """|upd(f, shape)| = std_count * C(r, f) * t!/(t-f)!."""
    return std_count(shape) * comb(r, f) * factorial(t) // factorial(t - f)


# -- Littlewood-Richardson ---------------------------------------------------


@lru_cache(maxsize=None)
def littlewood_richardson(mu: Partition, tau: Partition, lam: Partition) -> int:
    """c^lam_{mu,tau} by counting LR fillings of lam/mu with content tau.

    Fillings are semistandard, and the reverse reading word (right to left,
    top to bottom) must be a lattice word.
    """
    mu, tau, lam = Partition(mu), Partition(tau), Partition(lam)
    if mu.size + tau.size != lam.size or not lam.contains(mu) or not lam.contains(tau):
        return 0
    rows = [(i, mu.row(i), lam.row(i)) for i in range(1, len(lam) + 1)]
    filled: dict[Node, int] = {}
    counts = [0] * (len(tau) + 1)
    count = 0

    def fill_row(ri: int) -> None:
        nonlocal count
        if ri == len(rows):
            if counts[1:] == list(tau):
                count += 1
            return
        i, lo, hi = rows[ri]
        cells = list(range(hi, lo, -1))  # reading order: right to left

        def place(ci: int) -> None:
            if ci == len(cells):
                fill_row(ri + 1)
                return
            j = cells[ci]
            right = filled.get((i, j + 1))
            above = filled.get((i - 1, j))
            upper = right if right is not None else len(tau)
            lower = 1 if above is None else above + 1
            for v in range(lower, upper + 1):
                if counts[v] >= tau.row(v):
                    continue
                if v > 1 and counts[v] + 1 > counts[v - 1]:
                    continue
                filled[(i, j)] = v
                counts[v] += 1
                place(ci + 1)
                counts[v] -= 1
                del filled[(i, j)]

        place(0)

    fill_row(0)
    return count


def restriction_multiplicity(l: int, mu: Bipartition, lam: Bipartition) -> int:
    """Sum over tau of size l of c^{lam1}_{mu1,tau} c^{lam2}_{mu2,tau}."""
    return sum(littlewood_richardson(mu.first, tau, lam.first) * littlewood_richardson(mu.second, tau, lam.second)
               for tau in partitions_of(l))


def all_partitions_upto(n: int) -> list[Partition]:
    return [p for k in range(n + 1) for p in partitions_of(k)]

