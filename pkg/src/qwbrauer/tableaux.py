"""Up-down tableaux for the walled Brauer branching graph.

A tableau of context ``(r, t)`` is a path ``t_0, ..., t_{r+t}`` of
bipartitions starting at the empty bipartition. The first ``r`` steps add a
node to the first component; each later step either adds a node to the
second component or removes one from the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import NamedTuple

from .errors import (
    ConfigurationMismatch,
    ContextMismatch,
    IndexOutOfRange,
    InvalidShape,
    InvariantViolation,
    MoveAtWall,
)
from .partitions import (
    EMPTY,
    EMPTY_BIP,
    Bipartition,
    LambdaPoint,
    Partition,
    addable_nodes,
    lambda_leq,
    point,
    removable_nodes,
)
from .scalars import ExactScalar, expand, qint


class Step(NamedTuple):
    """The change made by one step: ``kind`` is 'add' or 'remove'."""

    kind: str
    component: int
    node: tuple[int, int]

    @property
    def content(self) -> int:
        return self.node[1] - self.node[0]


def level_context(k: int, r: int) -> tuple[int, int]:
    """The ``(r', t')`` context in which the length-``k`` prefix lives."""
    return (k, 0) if k <= r else (r, k - r)


def _diff(a: Bipartition, b: Bipartition) -> Step | None:
    """The single step turning ``a`` into ``b``, or None if there is none."""
    for comp in (0, 1):
        x, y = a[comp], b[comp]
        other_same = a[1 - comp] == b[1 - comp]
        if not other_same:
            continue
        if y.size == x.size + 1 and y.contains(x):
            node = next((i, y.row(i)) for i in range(1, len(y) + 1) if y.row(i) != x.row(i))
            return Step("add", comp + 1, node)
        if x.size == y.size + 1 and x.contains(y):
            node = next((i, x.row(i)) for i in range(1, len(x) + 1) if y.row(i) != x.row(i))
            return Step("remove", comp + 1, node)
    return None


def _legal_step(k: int, r: int, s: Step | None) -> bool:
    if s is None:
        return False
    if k <= r:
        return s.kind == "add" and s.component == 1
    return (s.kind == "add" and s.component == 2) or (s.kind == "remove" and s.component == 1)


@dataclass(frozen=True)
class UpDownTableau:
    """A path of bipartitions in context ``(r, t)``."""

    steps: tuple[Bipartition, ...]
    r: int
    t: int

    def __post_init__(self):
        if len(self.steps) != self.r + self.t + 1:
            raise InvalidShape(f"expected {self.r + self.t + 1} shapes, got {len(self.steps)}")

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, k: int) -> Bipartition:
        return self.steps[k]

    @property
    def n(self) -> int:
        return self.r + self.t

    @property
    def shape(self) -> Bipartition:
        return self.steps[-1]

    @property
    def f(self) -> int:
        return self.level(self.n)

    def level(self, k: int) -> int:
        """The number of contractions ``l`` at index ``k``."""
        return (k - self.steps[k].first.size - self.steps[k].second.size) // 2

    def point(self) -> LambdaPoint:
        return LambdaPoint(self.f, self.shape, self.r, self.t)

    def step(self, k: int) -> Step:
        s = _diff(self.steps[k - 1], self.steps[k])
        if s is None:
            raise InvariantViolation(f"no single step at index {k}")
        return s

    def prefix(self, k: int) -> "UpDownTableau":
        """The first ``k`` steps, as a tableau of its own level context."""
        r, t = level_context(k, self.r)
        return UpDownTableau(self.steps[: k + 1], r, t)

    def __str__(self) -> str:
        return "(" + ", ".join(str(s) for s in self.steps) + ")"

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


def validate(t: UpDownTableau) -> tuple[bool, int | None]:
    """Check the step rules; return ``(ok, first bad index)``."""
    if t.steps[0] != EMPTY_BIP:
        return False, 0
    for k in range(1, len(t.steps)):
        if not _legal_step(k, t.r, _diff(t.steps[k - 1], t.steps[k])):
            return False, k
    return True, None


def make_tableau(shapes, r: int, t: int) -> UpDownTableau:
    """Build and validate a tableau from a sequence of bipartitions."""
    tab = UpDownTableau(tuple(shapes), r, t)
    ok, bad = validate(tab)
    if not ok:
        raise InvalidShape(f"invalid up-down tableau at index {bad}")
    return tab


# -- enumeration and order ---------------------------------------------------


@lru_cache(maxsize=None)
def _paths(r: int, k: int, end: Bipartition) -> tuple[tuple[Bipartition, ...], ...]:
    # all valid prefixes of length k ending at ``end``, built backwards
    if k == 0:
        return ((EMPTY_BIP,),) if end == EMPTY_BIP else ()
    out = []
    if k <= r:
        if end.second:
            return ()
        for node in removable_nodes(end.first):
            prev = Bipartition(end.first.remove(node), EMPTY)
            out.extend(p + (end,) for p in _paths(r, k - 1, prev))
    else:
        for node in removable_nodes(end.second):
            prev = Bipartition(end.first, end.second.remove(node))
            out.extend(p + (end,) for p in _paths(r, k - 1, prev))
        if end.first.size < r:
            for node in addable_nodes(end.first):
                prev = Bipartition(end.first.add(node), end.second)
                out.extend(p + (end,) for p in _paths(r, k - 1, prev))
    return tuple(out)


def compare(s: UpDownTableau, t: UpDownTableau) -> int:
    """-1 if s precedes t, 1 if t precedes s, 0 if equal."""
    if (s.r, s.t) != (t.r, t.t):
        raise ContextMismatch("tableaux from different contexts")
    for k in range(len(s.steps) - 1, -1, -1):
        ls, lt = s.level(k), t.level(k)
        a, b = s.steps[k], t.steps[k]
        if ls == lt and a == b:
            continue
        if lambda_leq(ls, a, lt, b):
            return -1
        if lambda_leq(lt, b, ls, a):
            return 1
        raise InvariantViolation(f"incomparable levels at index {k}: {a} vs {b}")
    return 0


def precedes(s: UpDownTableau, t: UpDownTableau) -> bool:
    return compare(s, t) < 0


def enumerate_updown(r: int, t: int, shape: Bipartition, f: int | None = None) -> list[UpDownTableau]:
    """All tableaux ending at ``shape``, sorted descending under the order."""
    f = r - shape.first.size if f is None else f
    point(f, shape, r, t)
    tabs = [UpDownTableau(p, r, t) for p in _paths(r, r + t, shape)]
    return sorted(tabs, key=cmp_to_key(compare), reverse=True)


# -- distinguished tableaux --------------------------------------------------


def _row_fill(p: Partition) -> list[Partition]:
    seq, rows = [EMPTY], []
    for i, length in enumerate(p, start=1):
        for _ in range(length):
            rows.append(i)
    cur = [0] * len(p)
    for i in rows:
        cur[i - 1] += 1
        seq.append(Partition(x for x in cur if x))
    return seq


def tableau_max(f: int, shape: Bipartition, r: int, t: int) -> UpDownTableau:
    """The maximal tableau: row-fill, then shrink row 1, then row-fill the second component."""
    point(f, shape, r, t)
    lam1 = shape.first
    mu = Partition(((lam1.row(1) + f),) + tuple(lam1[1:])) if f else lam1
    steps = [Bipartition(p, EMPTY) for p in _row_fill(mu)]
    cur = mu
    for _ in range(f):
        cur = cur.remove((1, cur.row(1)))
        steps.append(Bipartition(cur, EMPTY))
    for p in _row_fill(shape.second)[1:]:
        steps.append(Bipartition(lam1, p))
    return UpDownTableau(tuple(steps), r, t)


def tableau_min(f: int, shape: Bipartition, r: int, t: int) -> UpDownTableau:
    """The tableau that fills extra single-node rows and removes them first."""
    point(f, shape, r, t)
    lam1 = shape.first
    nu = Partition(tuple(lam1) + (1,) * f)
    steps = [Bipartition(p, EMPTY) for p in _row_fill(nu)]
    for k in range(1, f + 1):
        steps.append(steps[r - k])
    top = tableau_max(f, shape, r, t)
    steps.extend(top.steps[r + f + 1:])
    return UpDownTableau(tuple(steps), r, t)


# -- moves -------------------------------------------------------------------


def apply_move(t: UpDownTableau, k: int) -> UpDownTableau | None:
    """Swap steps ``k`` and ``k+1`` if the result is a valid tableau."""
    if not (1 <= k <= t.n - 1):
        raise IndexOutOfRange(f"move index {k} outside 1..{t.n - 1}")
    if k == t.r:
        raise MoveAtWall(f"no move at the wall index {k}")
    a, c = t.steps[k - 1], t.steps[k + 1]
    found = []
    for cand in _one_step_neighbours(a, k, t.r):
        if cand != t.steps[k] and _legal_step(k + 1, t.r, _diff(cand, c)):
            found.append(cand)
    if len(found) > 1:
        raise InvariantViolation(f"move at {k} is not unique")
    if not found:
        return None
    steps = list(t.steps)
    steps[k] = found[0]
    return UpDownTableau(tuple(steps), t.r, t.t)


def _one_step_neighbours(a: Bipartition, k: int, r: int) -> list[Bipartition]:
    out = []
    if k <= r:
        out = [Bipartition(a.first.add(x), a.second) for x in addable_nodes(a.first)]
    else:
        out = [Bipartition(a.first, a.second.add(x)) for x in addable_nodes(a.second)]
        out += [Bipartition(a.first.remove(x), a.second) for x in removable_nodes(a.first)]
    return out


def move_blocked_by_row_or_column(t: UpDownTableau, k: int) -> bool:
    """True when the two nodes changed at steps k, k+1 share a row or column."""
    s1, s2 = t.step(k), t.step(k + 1)
    if s1.component != s2.component:
        return False
    return s1.node[0] == s2.node[0] or s1.node[1] == s2.node[1]


def apply_moves(t: UpDownTableau, indices) -> UpDownTableau:
    """Apply moves in order, failing loudly if any is missing."""
    for k in indices:
        nxt = apply_move(t, k)
        if nxt is None:
            raise ConfigurationMismatch(f"move at {k} does not exist for {t}")
        t = nxt
    return t


def chain_up(i: int, j: int) -> list[int]:
    """Indices of ``s_{i,j} = s_i s_{i+1} ... s_{j-1}`` for i <= j."""
    return list(range(i, j))


def chain_down(i: int, j: int) -> list[int]:
    """Indices of ``s_{i,j} = s_{i-1} s_{i-2} ... s_j`` for i > j."""
    return list(range(i - 1, j - 1, -1))


# -- contents ----------------------------------------------------------------


@lru_cache(maxsize=None)
def content_value(kind: str, component: int, c: int) -> ExactScalar:
    """Eigenvalue contributed by one step with integer content ``c``."""
    if component == 1:
        box = ExactScalar.monomial(-1, c) * expand(qint(c))
    else:
        box = ExactScalar.monomial(1, -c) * expand(qint(c))
    if kind == "add":
        return box
    return ExactScalar.delta() - box


def content_vector(t: UpDownTableau) -> tuple[ExactScalar, ...]:
    """``(c_t(1), ..., c_t(r+t))``."""
    out = []
    for k in range(1, t.n + 1):
        s = t.step(k)
        out.append(content_value(s.kind, s.component, s.content))
    return tuple(out)


# -- hat, tilde and the bar construction --------------------------------------


def hat(t: UpDownTableau) -> UpDownTableau:
    if t.n < 1:
        raise IndexOutOfRange("hat needs at least one step")
    return t.prefix(t.n - 1)


def tilde(t: UpDownTableau) -> UpDownTableau:
    h = hat(t)
    top = tableau_max(h.f, h.shape, h.r, h.t)
    return UpDownTableau(top.steps + (t.shape,), t.r, t.t)


class UBarData(NamedTuple):
    """Ingredients of the removal-in-row-k branching factor."""

    k: int
    b: int
    h: int
    w: UpDownTableau
    v: UpDownTableau
    u: UpDownTableau
    nu: Bipartition
    ubar: UpDownTableau
    nubar: Bipartition


def _bar(x: Bipartition, rows: int) -> Bipartition:
    return Bipartition(Partition(x.first[rows:]), x.second)


def build_u_and_bar(t: UpDownTableau) -> UBarData:
    """Construct w, v, u, nu and the row-reduced tableau ubar.

    Requires that ``t`` is the maximal tableau of its penultimate shape
    followed by the removal of ``p = (k, lambda_k + 1)`` with ``k > 1``.
    """
    R, T = t.r, t.t
    if T < 1:
        raise ConfigurationMismatch("needs at least one step right of the wall")
    last = t.step(t.n)
    if last.kind != "remove" or last.component != 1:
        raise ConfigurationMismatch("last step must remove a node of the first component")
    k = last.node[0]
    if k == 1:
        raise ConfigurationMismatch("row-1 removals use the direct formula, not the bar construction")
    h_tab = hat(t)
    if h_tab != tableau_max(h_tab.f, h_tab.shape, h_tab.r, h_tab.t):
        raise ConfigurationMismatch("hat(t) is not the maximal tableau of its shape")
    lam1 = t.shape.first
    f = t.f
    b = sum(lam1.row(i) for i in range(1, k)) + f - 1
    h = lam1.row(k) + 1
    w = apply_moves(t, chain_down(R + T, R + 1))
    if w.step(R + 1) != last:
        raise InvariantViolation("removal did not move to the wall")
    pos = b + h
    if w.step(pos) != Step("add", 1, last.node):
        raise InvariantViolation(f"node {last.node} is not added at step {pos}")
    v = apply_moves(w, chain_up(pos, R))
    u = v.prefix(R + 1)
    nu = v.steps[R + 1]
    if u.steps[R - 1] != u.steps[R + 1]:
        raise InvariantViolation("u does not return to its wall shape")
    for x in u.steps[b:]:
        if tuple(x.first[: k - 1]) != tuple(u.steps[b].first[: k - 1]) or len(u.steps[b].first) < k - 1:
            raise InvariantViolation("rows above k are not complete after step b")
    ubar = UpDownTableau(tuple(_bar(x, k - 1) for x in u.steps[b:]), R - b, 1)
    ok, bad = validate(ubar)
    if not ok:
        raise InvariantViolation(f"ubar invalid at {bad}")
    return UBarData(k, b, h, w, v, u, nu, ubar, _bar(nu, k - 1))
