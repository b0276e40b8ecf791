"""Acceptance checks shared by the ``selftest`` command and the test suite.

Each check returns a :class:`CheckResult`; ``quick=True`` shrinks the
sweeps so the whole battery runs in a few seconds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .blocks import blocks, n_balanced, vanishing_crosscheck
from .coefficients import (
    action_matrix,
    central_scalar,
    e_diag,
    e_diag_via_residue,
    quantum_dim,
    rect_hom_coeff,
    s_offdiag,
    schur_principal,
)
from .gram import gram_det, gram_det_recursive
from .partitions import (
    Bipartition,
    bip,
    bipartitions_of,
    enumerate_lambda,
    partitions_of,
    restriction_multiplicity,
    std_count,
    updown_count_formula,
)
from .scalars import (
    ExactScalar,
    SpecializationParams,
    expand,
    is_in_base_ring,
    parse_factored,
    substitute_rho_power,
)
from .tableaux import apply_move, compare, content_vector, enumerate_updown, make_tableau

_OMEGA = ExactScalar.q() - ExactScalar.monomial(0, -1)


@dataclass
class CheckResult:
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)


def _contexts(max_n: int, min_n: int = 0):
    for n in range(min_n, max_n + 1):
        for r in range(n + 1):
            yield r, n - r


def _points(max_n: int):
    for r, t in _contexts(max_n):
        yield from enumerate_lambda(r, t)


# -- independent closed forms built from rho and q directly -------------------


def _br(k: int) -> ExactScalar:
    """[delta+k] from its defining quotient."""
    rho, q = ExactScalar.rho(), ExactScalar.q()
    return (rho * q**k - rho.inverse() * q ** (-k)) / _OMEGA


def b22_expected() -> dict[str, ExactScalar]:
    q = ExactScalar.q()
    a = q ** (-1) + q ** (-3)
    b = q ** (-1) / (1 + q ** (-2))
    d = _br(0)
    return {
        "t": a * _br(-1),
        "s": b * _br(1),
        "u": a * d * _br(-2) / _br(-1),
        "v": b * d * _br(2) / _br(1),
        "det": q ** (-4) * d * d * _br(-2) * _br(2),
    }


def b22_tableaux():
    shapes = {
        "t": ["-|-", "1|-", "2|-", "1|-", "1|1"],
        "u": ["-|-", "1|-", "2|-", "2|1", "1|1"],
        "s": ["-|-", "1|-", "1,1|-", "1|-", "1|1"],
        "v": ["-|-", "1|-", "1,1|-", "1,1|1", "1|1"],
    }
    return {k: make_tableau([Bipartition.parse(s) for s in v], 2, 2) for k, v in shapes.items()}


# -- the criteria ----------------------------------------------------------------


def check_b22(quick: bool = False) -> CheckResult:
    rep = gram_det(1, bip((1,), (1,)), 2, 2)
    exp = b22_expected()
    norms = dict(rep.norms)
    fails = []
    if rep.determinant != parse_factored("q^-4 * [d]^2 * [d-2] * [d+2]"):
        fails.append("factored determinant")
    if rep.determinant_expanded != exp["det"]:
        fails.append("expanded determinant")
    for name, tab in b22_tableaux().items():
        if expand(norms[tab]) != exp[name]:
            fails.append(f"norm of {name}")
    return CheckResult(not fails, "det and 4 norms match" if not fails else ", ".join(fails), failures=fails)


def check_routes(quick: bool = False) -> CheckResult:
    n = 4 if quick else 6
    fails = [p for p in _points(n) if gram_det(p.f, p.shape, p.r, p.t).determinant
             != gram_det_recursive(p.f, p.shape, p.r, p.t)]
    return CheckResult(not fails, f"r+t <= {n}", failures=fails)


def check_base_ring(quick: bool = False) -> CheckResult:
    n = 4 if quick else 6
    fails = [p for p in _points(n) if not is_in_base_ring(gram_det(p.f, p.shape, p.r, p.t).determinant_expanded)]
    return CheckResult(not fails, f"r+t <= {n}", failures=fails)


def check_residues(quick: bool = False) -> CheckResult:
    n = 3 if quick else 5
    count, fails = 0, []
    for r in range(1, n + 1):
        for p in enumerate_lambda(r, 1):
            for tab in enumerate_updown(r, 1, p.shape, p.f):
                if tab[r - 1] != tab[r + 1]:
                    continue
                count += 1
                if e_diag_via_residue(tab) != expand(e_diag(tab)):
                    fails.append(tab)
    return CheckResult(not fails, f"{count} tableaux, r <= {n}", failures=fails)


def check_principal(quick: bool = False) -> CheckResult:
    size, top = (4, 5) if quick else (6, 8)
    fails = []
    for k in range(size + 1):
        for alpha in partitions_of(k):
            for n in range(max(len(alpha), 1), top + 1):
                if expand(substitute_rho_power(quantum_dim(alpha), n)) != schur_principal(alpha, n):
                    fails.append((alpha, n))
    return CheckResult(not fails, f"|alpha| <= {size}, n <= {top}", failures=fails)


def check_dimensions(quick: bool = False) -> CheckResult:
    n1, n2 = (5, 4) if quick else (7, 6)
    fails = []
    for p in _points(n1):
        if len(enumerate_updown(p.r, p.t, p.shape, p.f)) != updown_count_formula(p.f, p.shape, p.r, p.t):
            fails.append(("count", p))
    for r, t in _contexts(n2):
        targets = bipartitions_of(r, t)
        for p in enumerate_lambda(r, t):
            total = sum(restriction_multiplicity(p.f, p.shape, lam) * std_count(lam) for lam in targets)
            if total != updown_count_formula(p.f, p.shape, r, t):
                fails.append(("restriction", p))
    return CheckResult(not fails, f"counts r+t <= {n1}, restriction sums r+t <= {n2}", failures=fails)


def check_central(quick: bool = False) -> CheckResult:
    n = 4 if quick else 6
    fails = []
    for p in _points(n):
        want = central_scalar(p.f, p.shape)
        for tab in enumerate_updown(p.r, p.t, p.shape, p.f):
            if sum(content_vector(tab), ExactScalar.zero()) != want:
                fails.append((p, tab))
                break
    return CheckResult(not fails, f"r+t <= {n}", failures=fails)


def _moves(max_n: int):
    for p in _points(max_n):
        for tab in enumerate_updown(p.r, p.t, p.shape, p.f):
            for k in range(1, tab.n):
                if k != tab.r:
                    y = apply_move(tab, k)
                    if y is not None:
                        yield tab, k, y


def check_quadratic(quick: bool = False) -> CheckResult:
    n = 4 if quick else 5
    count, fails = 0, []
    for tab, k, _ in _moves(n):
        m = action_matrix(tab, k)
        count += 1
        for i in range(2):
            for j in range(2):
                sq = m[i][0] * m[0][j] + m[i][1] * m[1][j]
                if sq != _OMEGA * m[i][j] + (1 if i == j else 0):
                    fails.append((tab, k))
    return CheckResult(not fails, f"{count} moves, r+t <= {n}", failures=fails)


def check_neighbours(quick: bool = False) -> CheckResult:
    n = 4 if quick else 5
    count, fails = 0, []
    cache = {}
    for tab, k, y in _moves(n):
        if compare(y, tab) >= 0:
            continue
        p = tab.point()
        if p not in cache:
            cache[p] = dict(gram_det(p.f, p.shape, p.r, p.t).norms)
        norms = cache[p]
        count += 1
        if norms[y] != s_offdiag(y, k) * norms[tab]:
            fails.append((tab, k))
    return CheckResult(not fails, f"{count} pairs, r+t <= {n}", failures=fails)


def check_vanishing(quick: bool = False) -> CheckResult:
    n = 3 if quick else 5
    grid_e = (5, None) if quick else (5, 7, None)
    grid_p = (0, 2) if quick else (0, 2, 3)
    count, fails = 0, []
    for e in grid_e:
        for p in grid_p:
            for nn in range(-2, 3):
                params = SpecializationParams(e=e, p=p, n=nn)
                for pt in _points(n):
                    c = vanishing_crosscheck(pt.f, pt.shape, pt.r, pt.t, params)
                    count += 1
                    if c.agree is not True:
                        fails.append(c.to_json())
    nb = 4 if quick else 6
    audited, intransitive = 0, 0
    for e in grid_e:
        for nn in range(-2, 3):
            params = SpecializationParams(e=e, p=0, n=nn)
            for r, t in _contexts(nb):
                if e is not None and e <= max(r, t):
                    continue
                part = blocks(r, t, params)
                got = sorted(sorted(map(str, c)) for c in part.classes)
                comps, pairs = balanced_components(enumerate_lambda(r, t), params)
                audited += 1
                intransitive += pairs
                if got != sorted(sorted(map(str, c)) for c in comps):
                    fails.append(("blocks", r, t, params.describe()))
    return CheckResult(not fails, f"{count} criterion checks (r+t <= {n}), {audited} block partitions "
                       f"(r+t <= {nb}), {intransitive} same-class pairs not directly balanced",
                       failures=fails)


def balanced_components(pts, params) -> tuple[list[list], int]:
    """Connected components of the pairwise n-balanced graph by BFS, plus the
    number of same-component pairs that are not directly balanced."""
    adj = {a: [b for b in pts if b != a and n_balanced(a.shape, b.shape, params) is not None] for a in pts}
    seen, comps = set(), []
    for a in pts:
        if a in seen:
            continue
        comp, todo = [], [a]
        seen.add(a)
        while todo:
            x = todo.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        comps.append(comp)
    missing = sum(1 for c in comps for i, x in enumerate(c) for y in c[i + 1:] if y not in adj[x])
    return comps, missing


RECT_CONFIGS = [
    (1, 1, 1, 1), (2, 1, 1, 1), (1, 2, 1, 1), (2, 2, 1, 1), (2, 3, 1, 1),
    (3, 1, 1, 1), (1, 3, 1, 1), (1, 1, 2, 1), (1, 1, 1, 2), (2, 1, 2, 1),
    (1, 2, 1, 2), (2, 1, 1, 2), (1, 2, 2, 1), (3, 2, 1, 1), (2, 2, 2, 2),
    (3, 1, 1, 2), (1, 3, 2, 1), (2, 2, 1, 2), (3, 3, 1, 1), (1, 1, 3, 2),
]


def check_rect_example(quick: bool = False) -> CheckResult:
    want = ExactScalar.delta() - ExactScalar.monomial(1, -1)
    ok = rect_hom_coeff(2, 3, 1, 1) == want
    return CheckResult(ok, "rect_hom_coeff(2,3,1,1) = delta - rho q^-1" if ok else "mismatch")


def rect_vanishes_at(a: int, b: int, c: int, d: int, exponent: int) -> bool:
    """Does the rectangle coefficient vanish at rho = q^exponent?"""
    q = ExactScalar.q()
    return rect_hom_coeff(a, b, c, d).substitute(q**exponent, q).is_zero()


def check_rect_locus(quick: bool = False) -> CheckResult:
    fails = []
    for a, b, c, d in RECT_CONFIGS:
        m = a - b + c - d
        if not rect_vanishes_at(a, b, c, d, m):
            fails.append(((a, b, c, d), m))
    detail = (f"{len(RECT_CONFIGS) - len(fails)}/{len(RECT_CONFIGS)} vanish at rho^2 = q^(2m); "
              "the coefficient vanishes at rho^2 = q^(-2m) instead (see the decisions ledger)") if fails else \
        f"all {len(RECT_CONFIGS)} vanish at rho^2 = q^(2m)"
    return CheckResult(not fails, detail, failures=fails)


CRITERIA: list[tuple[str, str, Callable[[bool], CheckResult]]] = [
    ("1", "B(2,2) golden example", check_b22),
    ("2", "route equivalence", check_routes),
    ("3", "base-ring membership", check_base_ring),
    ("4", "residue identity", check_residues),
    ("5", "principal specialization", check_principal),
    ("6", "dimension identities", check_dimensions),
    ("7", "central-scalar path independence", check_central),
    ("8", "quadratic relation", check_quadratic),
    ("9", "neighbour-norm relation", check_neighbours),
    ("10", "blocks and vanishing cross-check", check_vanishing),
    ("11a", "rectangle coefficient example", check_rect_example),
    ("11b", "rectangle coefficient vanishing locus", check_rect_locus),
]


def run(ident: str, quick: bool = False) -> CheckResult:
    for key, _, fn in CRITERIA:
        if key == ident:
            start = time.perf_counter()
            res = fn(quick)
            res.seconds = time.perf_counter() - start
            return res
    raise KeyError(ident)


def run_all(quick: bool = False):
    for key, title, _ in CRITERIA:
        yield key, title, run(key, quick)
