"""Norms of orthogonal basis vectors and Gram determinants of cell modules.

Norms are built as telescoping products of branching factors gamma; the
chains of moves used inside gamma are walked explicitly, and every
comparison the construction relies on is recomputed rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .coefficients import e_diag, s_offdiag
from .errors import ConfigurationMismatch, InvariantViolation, NotABranch, BranchMismatch
from .partitions import Bipartition, LambdaPoint, Partition, addable_nodes, point, removable_nodes, updown_count_formula
from .scalars import ONE, BracketProduct, ExactScalar, bracket_product, expand, format_factored, qceil, qdelta, qpow
from .tableaux import (
    UpDownTableau,
    _diff,
    _legal_step,
    _bar,
    apply_move,
    build_u_and_bar,
    compare,
    enumerate_updown,
    level_context,
    tableau_max,
)


def _ceil_factorial(p: Partition) -> BracketProduct:
    return bracket_product(qceil(j) for row in p for j in range(1, row + 1))


def norm_of_max(f: int, mu: Bipartition, r: int | None = None, t: int | None = None) -> BracketProduct:
    """Norm of the maximal tableau of ``(f, mu)`` in closed form."""
    if r is not None and t is not None:
        point(f, mu, r, t)
    m1 = mu.first.row(1)
    tilde = Partition((m1 + f,) + tuple(mu.first[1:])) if (f or mu.first) else mu.first
    out = _ceil_factorial(tilde) * _ceil_factorial(mu.second)
    for i in range(1, f + 1):
        out = out * qpow(-(m1 + i - 1)) * qdelta(-(m1 + i - 1))
    return out


def norm_of_max_step(f: int, mu: Bipartition, nu: Bipartition, r: int, t: int) -> BracketProduct:
    """The factor A with norm(t^mu) = norm(t^nu) * A, for nu the penultimate shape of t^mu."""
    tm = tableau_max(f, mu, r, t)
    if tm.n == 0 or tm.steps[-2] != nu:
        raise BranchMismatch(f"{nu} is not the penultimate shape of the maximal tableau of {mu}")
    s = tm.step(tm.n)
    i, j = s.node
    if s.kind == "add" and s.component == 1:
        return qceil(mu.first.row(i))
    if s.kind == "add":
        return qceil(mu.second.row(i))
    m1 = mu.first.row(1)
    return qpow(-m1) * qdelta(-m1)


# -- walking chains of moves -------------------------------------------------


def move_ratio(x: UpDownTableau, k: int) -> tuple[UpDownTableau, BracketProduct, int]:
    """``(y, <f_y>/<f_x>, compare(y, x))`` for ``y = x s_k``."""
    y = apply_move(x, k)
    if y is None:
        raise ConfigurationMismatch(f"move at {k} does not exist for {x}")
    c = compare(y, x)
    if c < 0:
        return y, s_offdiag(y, k), c
    return y, s_offdiag(x, k).inverse(), c


def _walk(x: UpDownTableau, indices, expect: str) -> tuple[UpDownTableau, BracketProduct]:
    """Apply moves in order; ``expect`` is 'down' or 'up' for each step."""
    ratio = ONE
    for k in indices:
        y, rk, c = move_ratio(x, k)
        if (c < 0) != (expect == "down"):
            raise InvariantViolation(f"chain direction at move {k} is not {expect} for {x}")
        ratio = ratio * rk
        x = y
    return x, ratio


# -- gamma --------------------------------------------------------------------


def _previous_context(r: int, t: int) -> tuple[int, int]:
    return (r - 1, 0) if t == 0 else (r, t - 1)


def _check_branch(lam: LambdaPoint, mu: LambdaPoint) -> None:
    lam.validate()
    mu.validate()
    if (mu.r, mu.t) != _previous_context(lam.r, lam.t):
        raise NotABranch(f"{mu} lives in context {(mu.r, mu.t)}, not the level below {(lam.r, lam.t)}")
    if not _legal_step(lam.r + lam.t, lam.r, _diff(mu.shape, lam.shape)):
        raise NotABranch(f"{mu.shape} -> {lam.shape} is not a branching edge")


@lru_cache(maxsize=None)
def gamma(lam: LambdaPoint, mu: LambdaPoint) -> BracketProduct:
    """The branching factor ``<f_t>/<f_{t^mu}>`` for ``t = t^mu`` extended by ``lam``."""
    _check_branch(lam, mu)
    r, t = lam.r, lam.t
    base = tableau_max(mu.f, mu.shape, mu.r, mu.t)
    target = UpDownTableau(base.steps + (lam.shape,), r, t)
    step = target.step(target.n)
    k = step.node[0]
    l1, l2 = lam.shape.first, lam.shape.second
    top = tableau_max(lam.f, lam.shape, r, t)

    if step.kind == "add" and step.component == 1:
        a_k = sum(l1.row(i) for i in range(1, k + 1))
        end, ratio = _walk(top, range(a_k, r), "down")
        _expect_equal(end, target, "first-component chain")
        return qceil(l1.row(k)) * ratio

    if step.kind == "add":
        b_k = lam.f + sum(l2.row(i) for i in range(1, k + 1))
        end, ratio = _walk(top, [r + j for j in range(b_k, t)], "down")
        _expect_equal(end, target, "second-component chain")
        return qceil(l2.row(k)) * ratio

    lk = l1.row(k)
    head = qpow(-lk) * qdelta(-lk)
    if k == 1:
        end, ratio = _walk(top, range(r + lam.f, r + t), "down")
        _expect_equal(end, target, "row-one removal chain")
        return head * ratio

    data = build_u_and_bar(target)
    pos = data.b + data.h
    w, up = _walk(data.v, range(r - 1, pos - 1, -1), "up")
    _expect_equal(w, data.w, "wall chain")
    end, down = _walk(w, range(r + 1, r + t), "down")
    _expect_equal(end, target, "starred chain")
    rb = r - data.b
    tnubar = tableau_max(1, data.nubar, rb, 1)
    ubar, a_u = _walk(tnubar, range(data.h, rb), "down")
    _expect_equal(ubar, data.ubar, "barred chain")
    return head * e_diag(data.u) / e_diag(data.ubar) * a_u * up * down


def _expect_equal(a: UpDownTableau, b: UpDownTableau, what: str) -> None:
    if a != b:
        raise InvariantViolation(f"{what} ended at {a}, expected {b}")


def level_point(t: UpDownTableau, k: int) -> LambdaPoint:
    r, tt = level_context(k, t.r)
    return LambdaPoint(t.level(k), t.steps[k], r, tt)


def norm(t: UpDownTableau) -> BracketProduct:
    """``<f_t, f_t>`` as the product of gamma over the levels of t."""
    return bracket_product(gamma(level_point(t, k), level_point(t, k - 1)) for k in range(1, t.n + 1))


def norm_via_division(t: UpDownTableau) -> BracketProduct:
    """The recursion norm(t) = norm(hat t) * norm(tilde t) / norm(t^mu), used as an oracle."""
    if t.n == 0:
        return ONE
    hat = t.prefix(t.n - 1)
    mu = hat.point()
    tmax = tableau_max(mu.f, mu.shape, mu.r, mu.t)
    tilde = UpDownTableau(tmax.steps + (t.shape,), t.r, t.t)
    return norm_via_division(hat) * norm(tilde) / norm(tmax)


# -- Gram determinants ---------------------------------------------------------


@dataclass
class GramReport:
    """Per-tableau norms and the determinant of one cell module."""

    shape: LambdaPoint
    norms: list[tuple[UpDownTableau, BracketProduct]]
    determinant: BracketProduct
    determinant_expanded: ExactScalar = field(repr=False)
    in_base_ring: bool

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "tableaux": [tab.to_json() for tab, _ in self.norms],
            "norms": [format_factored(n) for _, n in self.norms],
            "determinant": format_factored(self.determinant),
            "determinant_expanded": str(self.determinant_expanded),
            "in_base_ring": self.in_base_ring,
        }


def cell_dimension(p: LambdaPoint) -> int:
    """Number of up-down tableaux, cross-checked against the product formula."""
    n = len(enumerate_updown(p.r, p.t, p.shape, p.f))
    if n != updown_count_formula(p.f, p.shape, p.r, p.t):
        raise InvariantViolation(f"dimension mismatch for {p}")
    return n


def gram_det(f: int, lam: Bipartition, r: int, t: int) -> GramReport:
    """Route A: the product of the norms of all tableaux of shape ``(f, lam)``."""
    p = point(f, lam, r, t)
    norms = [(tab, norm(tab)) for tab in enumerate_updown(r, t, lam, f)]
    det = bracket_product(n for _, n in norms)
    in_ring = det.in_base_ring()
    if not in_ring:
        raise InvariantViolation(f"determinant of {p} is not in the base ring: {format_factored(det)}")
    return GramReport(p, norms, det, expand(det), in_ring)


def predecessors(p: LambdaPoint) -> list[LambdaPoint]:
    """All ``(l, mu)`` one level below with ``mu -> lam``."""
    r, t = p.r, p.t
    if r + t == 0:
        return []
    pr, pt = _previous_context(r, t)
    a, b = p.shape
    out = []
    if t == 0:
        out = [LambdaPoint(0, Bipartition(a.remove(x), b), pr, pt) for x in removable_nodes(a)]
    else:
        out = [LambdaPoint(p.f, Bipartition(a, b.remove(x)), pr, pt) for x in removable_nodes(b)]
        if p.f >= 1:
            out += [LambdaPoint(p.f - 1, Bipartition(a.add(x), b), pr, pt) for x in addable_nodes(a)]
    return [m for m in out if _valid(m)]


def _valid(m: LambdaPoint) -> bool:
    try:
        m.validate()
        return True
    except Exception:
        return False


@lru_cache(maxsize=None)
def _det_recursive(p: LambdaPoint) -> BracketProduct:
    if p.r + p.t == 0:
        return ONE
    return bracket_product(_det_recursive(m) * gamma(p, m) ** cell_dimension(m) for m in predecessors(p))


def gram_det_recursive(f: int, lam: Bipartition, r: int, t: int) -> BracketProduct:
    """Route B: the product over predecessors of det * gamma^dim."""
    return _det_recursive(point(f, lam, r, t))


def prop_u_formula(lam1: Partition, k: int, r: int) -> tuple[BracketProduct, BracketProduct]:
    """For the tableau u of shape ``(lam1, -)`` in context ``(r, 1)`` that adds and removes
    ``(k, lam1_k + 1)`` at the wall, return ``(closed form, norm(u))``."""
    lam1 = Partition(lam1)
    if k < 2 or (k, lam1.row(k) + 1) not in addable_nodes(lam1) or lam1.size != r - 1:
        raise ConfigurationMismatch(f"row {k} is not a valid wall row for {lam1} with r={r}")
    from .tableaux import _row_fill
    from .partitions import EMPTY

    seq = [Bipartition(x, EMPTY) for x in _row_fill(lam1)]
    node = (k, lam1.row(k) + 1)
    seq += [Bipartition(lam1.add(node), EMPTY), seq[-1]]
    u = UpDownTableau(tuple(seq), r, 1)
    b = sum(lam1.row(i) for i in range(1, k))
    h = lam1.row(k) + 1
    lam_bar = _bar(Bipartition(lam1, EMPTY), k - 1)
    ubar = UpDownTableau(tuple(_bar(x, k - 1) for x in seq[b:]), r - b, 1)
    top = tableau_max(1, lam_bar, r - b, 1)
    end, a_u = _walk(top, range(h, r - b), "down")
    _expect_equal(end, ubar, "barred chain")
    lk = lam1.row(k)
    closed = (qpow(-lk) * qceil(lk + 1) * _ceil_factorial(lam1) * e_diag(u) / e_diag(ubar)
              * qdelta(-lk) * a_u)
    return closed, norm(u)
