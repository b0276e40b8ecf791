"""Closed-form scalars of the orthogonal form.

Covers the central element eigenvalue, the S-coefficients describing how
``g_k`` and ``g*_k`` act on the orthogonal basis, the E-coefficients as hook
ratios of quantum dimensions, the principal specialization of Schur
functions, the generating series ``W_r(u)`` and the rectangle homomorphism
coefficient.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .errors import DegenerateContents, IndexOutOfRange, NoMove, TooFewVariables, WallMismatch
from .partitions import Bipartition, Partition, conjugate, content, hook_length
from .scalars import (
    ONE,
    BracketProduct,
    ExactScalar,
    RationalFunctionInU,
    bracket_product,
    expand,
    qdelta,
    qint,
    qpow,
    residue_at,
)
from .tableaux import UpDownTableau, apply_move, compare, content_vector

_OMEGA = ExactScalar.q() - ExactScalar.monomial(0, -1)


def central_scalar(f: int, shape: Bipartition) -> ExactScalar:
    """Eigenvalue of the central element sum_k c(k) on the cell module (f, shape).

    Second-component boxes enter with a plus sign, matching the sum of the
    content eigenvalues along any up-down tableau.
    """
    total = ExactScalar.delta() * f
    for node in shape.first.nodes():
        c = content(node)
        total = total + ExactScalar.monomial(-1, c) * expand(qint(c))
    for node in shape.second.nodes():
        c = content(node)
        total = total + ExactScalar.monomial(1, -c) * expand(qint(c))
    return total


# -- S-coefficients ----------------------------------------------------------


def s_pair_coeffs(c1: int, c2: int) -> tuple[BracketProduct, BracketProduct, BracketProduct, BracketProduct]:
    """``(S1, S2, S1*, S2*)`` for the contents of two consecutive nodes."""
    d = c1 - c2
    if d == 0:
        raise DegenerateContents(f"equal contents {c1}")
    s1 = qpow(d) / qint(d)
    s2 = qint(d + 1) * qint(d - 1) / qint(d) ** 2
    return s1, s2, _s1_star(c1, c2), s2


def _s1_star(c1: int, c2: int) -> BracketProduct:
    m = c1 + c2
    return qdelta(-m + 1) * qdelta(-m - 1) / qdelta(-m) ** 2


def s_offdiag(t: UpDownTableau, k: int) -> BracketProduct:
    """``S_{t, t s_k}(k)``: the coefficient of ``f_{t s_k}`` in ``f_t g_k``."""
    ts = apply_move(t, k)
    if ts is None:
        raise NoMove(f"no move at {k} for {t}")
    if compare(ts, t) < 0:
        return ONE
    a, b = t.step(k), t.step(k + 1)
    if k > t.r and a.kind == "add" and b.kind == "remove":
        return _s1_star(a.content, b.content)
    return s_pair_coeffs(a.content, b.content)[1]


def s_diag(t: UpDownTableau, k: int) -> ExactScalar:
    """``S_{t,t}(k)``: the coefficient of ``f_t`` in ``f_t g_k`` (or ``g*_{k-r}``)."""
    if not (1 <= k <= t.n - 1) or k == t.r:
        raise IndexOutOfRange(f"index {k} is not a move index for context ({t.r}, {t.t})")
    if apply_move(t, k) is None:
        a, b = t.step(k), t.step(k + 1)
        same_row = a.node[0] == b.node[0]
        return -ExactScalar.monomial(0, -1) if same_row else ExactScalar.q()
    cv = content_vector(t)
    ck, ck1 = cv[k - 1], cv[k]
    if k < t.r:
        a, b = t.step(k), t.step(k + 1)
        return expand(qpow(a.content - b.content) / qint(a.content - b.content))
    return (ExactScalar.rho() - _OMEGA * ck1) / (ck - ck1)


def action_matrix(t: UpDownTableau, k: int) -> list[list[ExactScalar]]:
    """The 2x2 matrix of ``g_k`` on the span of ``f_t`` and ``f_{t s_k}``."""
    ts = apply_move(t, k)
    if ts is None:
        raise NoMove(f"no move at {k} for {t}")
    return [[s_diag(t, k), expand(s_offdiag(t, k))],
            [expand(s_offdiag(ts, k)), s_diag(ts, k)]]


# -- quantum dimensions and E-coefficients -----------------------------------


@lru_cache(maxsize=None)
def quantum_dim(alpha: Partition) -> BracketProduct:
    """``omega_alpha(rho, q) = prod [delta + c(p)] / [h_p]`` over the nodes of alpha."""
    alpha = Partition(alpha)
    return bracket_product(qdelta(content(p)) / qint(hook_length(alpha, p)) for p in alpha.nodes())


omega = quantum_dim


def e_diag(t: UpDownTableau) -> BracketProduct:
    """``E_{t,t}(r)`` as the ratio of quantum dimensions of conjugate shapes."""
    r = t.r
    if r < 1 or t.n < r + 1 or t[r - 1] != t[r + 1]:
        raise WallMismatch(f"t_(r-1) != t_(r+1) for {t}")
    mu, nu = t[r - 1].first, t[r].first
    return quantum_dim(conjugate(nu)) / quantum_dim(conjugate(mu))


def _h_principal(k: int, n: int) -> ExactScalar:
    """Complete homogeneous h_k at ``q^(-n+1), q^(-n+3), ..., q^(n-1)``."""
    if k < 0:
        return ExactScalar.zero()
    row = [ExactScalar.one()] + [ExactScalar.zero()] * k
    for i in range(1, n + 1):
        x = ExactScalar.monomial(0, -n + 2 * i - 1)
        for j in range(1, k + 1):
            row[j] = row[j] + x * row[j - 1]
    return row[k]


def _sign(perm) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def schur_principal(alpha: Partition, n: int) -> ExactScalar:
    """``s_alpha(q^(-n+1), ..., q^(n-1))`` by the Jacobi-Trudi determinant."""
    alpha = Partition(alpha)
    if n < len(alpha):
        raise TooFewVariables(f"{alpha} has {len(alpha)} parts but only {n} variables")
    m = len(alpha)
    if m == 0:
        return ExactScalar.one()
    h = {}
    entries = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            k = alpha[i] - i + j
            if k not in h:
                h[k] = _h_principal(k, n)
            entries[i][j] = h[k]
    total = ExactScalar.zero()
    for perm in permutations(range(m)):
        term = ExactScalar.from_rational(_sign(perm))
        for i in range(m):
            term = term * entries[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


# -- the series W_r(u) -------------------------------------------------------


def w_series(prefix_contents, r: int) -> RationalFunctionInU:
    """``W_r(u)`` with ``x_1..x_{r-1}`` replaced by the given eigenvalues."""
    xs = list(prefix_contents)[: max(r - 1, 0)]
    if r < 1 or len(xs) != r - 1:
        raise IndexOutOfRange(f"w_series needs r >= 1 and r-1 contents, got r={r}, {len(xs)}")
    u = RationalFunctionInU.u()
    rho, rho_inv = ExactScalar.rho(), ExactScalar.monomial(-1, 0)
    lead = rho * u / (rho_inv + _OMEGA * u)
    tail = (ExactScalar.delta() - u) / (1 + rho * _OMEGA * u)
    for x in xs:
        sq = (u - x) * (u - x)
        tail = tail * sq / (sq - (rho_inv + _OMEGA * u) * (_OMEGA * x + rho_inv))
    return lead + tail


def w_recursion_step(w_prev: RationalFunctionInU, x) -> RationalFunctionInU:
    """Apply the one-step recursion taking ``W_i`` to ``W_{i+1}``."""
    u = RationalFunctionInU.u()
    rho, rho_inv = ExactScalar.rho(), ExactScalar.monomial(-1, 0)
    lead = rho * u / (rho_inv + _OMEGA * u)
    sq = (u - x) * (u - x)
    return lead + sq / (sq - (rho_inv + _OMEGA * u) * (_OMEGA * x + rho_inv)) * (w_prev - lead)


def e_diag_via_residue(t: UpDownTableau) -> ExactScalar:
    """``Res_{u = c_t(r)} W_r(u, t)/u``."""
    r = t.r
    if r < 1 or t.n < r + 1 or t[r - 1] != t[r + 1]:
        raise WallMismatch(f"t_(r-1) != t_(r+1) for {t}")
    cv = content_vector(t)
    w = w_series(cv[: r - 1], r)
    return residue_at(w / RationalFunctionInU.u(), cv[r - 1])


# -- rectangle homomorphism coefficient ---------------------------------------


def rect_hom_coeff(a: int, b: int, c: int, d: int) -> ExactScalar:
    """``delta + rho q^m [m]`` with ``m = a - b + c - d``."""
    m = a - b + c - d
    return ExactScalar.delta() + ExactScalar.monomial(1, m) * expand(qint(m))
