"""Block classification and the Gram-nonvanishing criterion.

With ``rho^2 = q^(2n)`` two contents ``a, b`` are n-paired when
``a + b = n`` modulo the quantum characteristic ``e``. Blocks of the cell
modules are the classes of the n-balanced relation (valid for
``e > max(r, t)``); whether a cell module equals its simple head is decided
by three conditions on ``(f, lambda)`` which are cross-checked here against
the specialized determinant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GenericRho, PreconditionViolated, SpecializationPole
from .gram import gram_det
from .partitions import (
    Bipartition,
    LambdaPoint,
    Node,
    Partition,
    content,
    e_restricted,
    enumerate_lambda,
    hook_length,
    partitions_of,
    point,
)
from .scalars import SpecializationParams, specialize


def _require_n(params: SpecializationParams) -> int:
    if params.n is None:
        raise GenericRho("n-pairing needs rho = q^n; got generic rho")
    return params.n


def _congruent(a: int, b: int, e: int | None) -> bool:
    return a == b if e is None else (a - b) % e == 0


def n_paired(a: int, b: int, params: SpecializationParams) -> bool:
    """``q^(2(a+b-n)) = 1``, i.e. ``a + b = n`` modulo e."""
    return _congruent(a + b, _require_n(params), params.e)


# -- matchings -----------------------------------------------------------------


def _perfect_matching(left: list[Node], right: list[Node], ok) -> list[tuple[Node, Node]] | None:
    """Perfect matching of ``left`` with ``right`` using edges where ``ok(x, y)``."""
    if len(left) != len(right):
        return None
    adj = [[j for j, y in enumerate(right) if ok(x, y)] for x in left]
    match_r: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_r or augment(match_r[j], seen):
                match_r[j] = i
                return True
        return False

    for i in range(len(left)):
        if not augment(i, set()):
            return None
    return sorted((left[i], right[j]) for j, i in match_r.items())


def _skew(outer: Partition, inner: Partition) -> list[Node]:
    return [x for x in outer.nodes() if not (x[0] <= len(inner) and x[1] <= inner.row(x[0]))]


def _meet(a: Partition, b: Partition) -> Partition:
    return Partition(x for x in (min(a.row(i), b.row(i)) for i in range(1, max(len(a), len(b)) + 1)) if x)


@dataclass(frozen=True)
class BalancedWitness:
    """Pairings of the two skew regions of each bipartition."""

    lam_pairs: list[tuple[Node, Node]]
    mu_pairs: list[tuple[Node, Node]]


def n_balanced(lam: Bipartition, mu: Bipartition, params: SpecializationParams) -> BalancedWitness | None:
    """Return a witness pairing if ``lam`` and ``mu`` are n-balanced, else None."""
    n = _require_n(params)
    ok = lambda x, y: _congruent(content(x) + content(y), n, params.e)  # noqa: E731
    m1, m2 = _meet(lam.first, mu.first), _meet(lam.second, mu.second)
    a = _perfect_matching(_skew(lam.first, m1), _skew(lam.second, m2), ok)
    if a is None:
        return None
    b = _perfect_matching(_skew(mu.first, m1), _skew(mu.second, m2), ok)
    if b is None:
        return None
    return BalancedWitness(a, b)


# -- blocks ----------------------------------------------------------------------


@dataclass
class BlockPartition:
    r: int
    t: int
    params: SpecializationParams
    classes: list[list[LambdaPoint]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "t": self.t,
            "params": self.params.to_json(),
            "classes": [[{"f": p.f, "shape": str(p.shape)} for p in c] for c in self.classes],
        }


def blocks(r: int, t: int, params: SpecializationParams) -> BlockPartition:
    """Classes of the n-balanced relation on Lambda_{r,t}."""
    _require_n(params)
    if params.e is not None and params.e <= max(r, t):
        raise PreconditionViolated(f"blocks need e > max(r, t); got e={params.e}, r={r}, t={t}")
    pts = enumerate_lambda(r, t)
    parent = list(range(len(pts)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if find(i) != find(j) and n_balanced(pts[i].shape, pts[j].shape, params) is not None:
                parent[find(i)] = find(j)
    groups: dict[int, list[LambdaPoint]] = {}
    for i, p in enumerate(pts):
        groups.setdefault(find(i), []).append(p)
    return BlockPartition(r, t, params, sorted(groups.values(), key=lambda c: (c[0].f, str(c[0].shape))))


# -- the nonvanishing criterion ----------------------------------------------------


def _supersets(inner: Partition, size: int) -> list[Partition]:
    return [p for p in partitions_of(size) if p.contains(inner)]


def lemma_block_n_witnesses(f: int, lam: Bipartition, r: int, t: int) -> dict[int, tuple[LambdaPoint, list]]:
    """For each n in the n-set, one ``(l, mu)`` and a pairing achieving it."""
    point(f, lam, r, t)
    out: dict[int, tuple[LambdaPoint, list]] = {}
    for l in range(f):
        for m1 in _supersets(lam.first, r - l):
            for m2 in _supersets(lam.second, t - l):
                left, right = _skew(m1, lam.first), _skew(m2, lam.second)
                for n in sorted({content(x) + content(y) for x in left for y in right}):
                    if n in out:
                        continue
                    pairs = _perfect_matching(left, right, lambda x, y: content(x) + content(y) == n)
                    if pairs is not None:
                        out[n] = (LambdaPoint(l, Bipartition(m1, m2), r, t), pairs)
    return out


def lemma_block_n_set(f: int, lam: Bipartition, r: int, t: int) -> set[int]:
    """Integers n with rho^2 = q^(2n) forcing det G_{f,lam} = 0 when q^2 has infinite order."""
    return set(lemma_block_n_witnesses(f, lam, r, t))


def _vp(h: int, p: int) -> int:
    if p == 0:
        return 0
    v = 0
    while h % p == 0:
        h //= p
        v += 1
    return v


def v_ep(h: int, e: int | None, p: int) -> int:
    """``v_p(h/e)`` when e is finite and divides h, otherwise -1 (p = 0 means characteristic 0)."""
    if e is None or h % e != 0:
        return -1
    return _vp(h // e, p)


def _row_constant(part: Partition, e: int | None, p: int) -> list[int]:
    """Rows of ``part`` along which v_{e,p} of the hook lengths is not constant."""
    bad = []
    for a in range(1, len(part) + 1):
        vals = {v_ep(hook_length(part, (a, c)), e, p) for c in range(1, part.row(a) + 1)}
        if len(vals) > 1:
            bad.append(a)
    return bad


@dataclass
class Verdict:
    """Outcome of the nonvanishing criterion with the reasons it failed."""

    nonzero: bool
    failed: list[str]
    n_witness: tuple[int, LambdaPoint, list] | None = None
    modular: bool = False

    def to_json(self) -> dict:
        out = {"nonzero": self.nonzero, "failed": self.failed, "modular_comparison": self.modular}
        if self.n_witness is not None:
            n, mu, pairs = self.n_witness
            out["witness"] = {"n": n, "mu": {"f": mu.f, "shape": str(mu.shape)},
                              "pairs": [[list(a), list(b)] for a, b in pairs]}
        return out


def gram_nonzero(f: int, lam: Bipartition, r: int, t: int, params: SpecializationParams) -> Verdict:
    """Decide ``det G_{f,lam} != 0`` over the field described by ``params``."""
    point(f, lam, r, t)
    failed = []
    witness = None
    if params.n is not None:
        for n, (mu, pairs) in sorted(lemma_block_n_witnesses(f, lam, r, t).items()):
            if _congruent(n, params.n, params.e):
                failed.append("a")
                witness = (n, mu, pairs)
                break
    if not e_restricted(lam, params.e):
        failed.append("b")
    if _row_constant(lam.first, params.e, params.p) or _row_constant(lam.second, params.e, params.p):
        failed.append("c")
    return Verdict(not failed, failed, witness, modular=params.e is not None)


is_simple_head = gram_nonzero


@dataclass
class CrossCheck:
    point: LambdaPoint
    params: SpecializationParams
    criterion: bool
    determinant: bool | None  # None when the specialization hit a pole
    verdict: Verdict

    @property
    def agree(self) -> bool | None:
        return None if self.determinant is None else self.criterion == self.determinant

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "params": self.params.describe(),
                "criterion_nonzero": self.criterion, "determinant_nonzero": self.determinant,
                "agree": self.agree, "verdict": self.verdict.to_json()}


def vanishing_crosscheck(f: int, lam: Bipartition, r: int, t: int, params: SpecializationParams) -> CrossCheck:
    """Compare the criterion with the specialized factored determinant."""
    verdict = gram_nonzero(f, lam, r, t, params)
    det = gram_det(f, lam, r, t).determinant
    try:
        nonzero = not specialize(det, params).is_zero
    except SpecializationPole:
        nonzero = None
    return CrossCheck(LambdaPoint(f, lam, r, t), params, verdict.nonzero, nonzero, verdict)
