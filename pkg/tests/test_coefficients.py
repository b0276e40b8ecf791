import pytest
from hypothesis import given, settings, strategies as st

from qwbrauer.coefficients import (
    action_matrix,
    central_scalar,
    e_diag,
    e_diag_via_residue,
    quantum_dim,
    rect_hom_coeff,
    s_diag,
    s_offdiag,
    s_pair_coeffs,
    schur_principal,
    w_recursion_step,
    w_series,
)
from qwbrauer.errors import DegenerateContents, IndexOutOfRange, NoMove, TooFewVariables, WallMismatch
from qwbrauer.partitions import Bipartition, Partition, bip, enumerate_lambda, partitions_of
from qwbrauer.scalars import ExactScalar, expand, parse_factored, qdelta, qint, qpow, substitute_rho_power
from qwbrauer.selftest import RECT_CONFIGS, rect_vanishes_at
from qwbrauer.tableaux import apply_move, content_vector, enumerate_updown, make_tableau, tableau_max

RHO, Q = ExactScalar.rho(), ExactScalar.q()
OMEGA = Q - Q.inverse()
DELTA = ExactScalar.delta()


def tab(shapes, r, t):
    return make_tableau([Bipartition.parse(s) for s in shapes], r, t)


def all_tabs(max_n):
    for n in range(max_n + 1):
        for r in range(n + 1):
            for p in enumerate_lambda(r, n - r):
                yield from enumerate_updown(r, n - r, p.shape, p.f)


def test_s_pair_values():
    s1, s2, s1s, s2s = s_pair_coeffs(2, 0)
    assert s1 == qpow(2) / qint(2)
    assert s2 == qint(3) * qint(1) / qint(2) ** 2
    assert s1s == qdelta(-1) * qdelta(-3) / qdelta(-2) ** 2
    assert s2s == s2


def test_s_pair_rejects_equal_contents():
    with pytest.raises(DegenerateContents):
        s_pair_coeffs(1, 1)


def test_b22_offdiagonal():
    t = tab(["-|-", "1|-", "2|-", "1|-", "1|1"], 2, 2)
    u = apply_move(t, 3)
    # u precedes t, so the coefficient of f_u in f_t g is 1
    assert s_offdiag(t, 3).is_one()
    assert s_offdiag(u, 3) == qdelta(0) * qdelta(-2) / qdelta(-1) ** 2
    with pytest.raises(NoMove):
        s_offdiag(t, 1)


def test_no_move_diagonals():
    t = tab(["-|-", "1|-", "2|-", "1|-", "1|1"], 2, 2)
    assert s_diag(t, 1) == -Q.inverse()
    s = tab(["-|-", "1|-", "1,1|-", "1|-", "1|1"], 2, 2)
    assert s_diag(s, 1) == Q
    with pytest.raises(IndexOutOfRange):
        s_diag(t, 2)


@pytest.mark.parametrize("x", list(all_tabs(4)), ids=str)
def test_quadratic_relation(x):
    for k in range(1, x.n):
        if k == x.r:
            continue
        if apply_move(x, k) is None:
            d = s_diag(x, k)
            assert d * d == OMEGA * d + 1
            continue
        m = action_matrix(x, k)
        for i in range(2):
            for j in range(2):
                assert m[i][0] * m[0][j] + m[i][1] * m[1][j] == OMEGA * m[i][j] + (1 if i == j else 0)


def test_central_scalar_examples():
    assert central_scalar(1, bip()) == DELTA
    assert central_scalar(0, bip((2,), ())) == RHO.inverse() * Q
    assert central_scalar(0, bip((), (2,))) == RHO * Q.inverse()


@pytest.mark.parametrize("p", [p for n in range(6) for r in range(n + 1) for p in enumerate_lambda(r, n - r)], ids=str)
def test_central_scalar_is_path_independent(p):
    want = central_scalar(p.f, p.shape)
    for x in enumerate_updown(p.r, p.t, p.shape, p.f):
        assert sum(content_vector(x), ExactScalar.zero()) == want


def test_quantum_dim_of_a_box_is_delta():
    assert quantum_dim(Partition((1,))) == qdelta(0)


def test_quantum_dim_two_rows():
    assert quantum_dim(Partition((2,))) == qdelta(0) * qdelta(1) / qint(2)


@given(st.integers(0, 5).flatmap(lambda k: st.sampled_from(partitions_of(k))), st.integers(1, 6))
def test_quantum_dim_principal_specialization(alpha, n):
    if n < len(alpha):
        with pytest.raises(TooFewVariables):
            schur_principal(alpha, n)
        return
    assert expand(substitute_rho_power(quantum_dim(alpha), n)) == schur_principal(alpha, n)


def test_schur_principal_small():
    # s_(1) at q^-1, q is q + q^-1; s_(1,1) is the product
    assert schur_principal(Partition((1,)), 2) == Q + Q.inverse()
    assert schur_principal(Partition((1, 1)), 2) == ExactScalar.one()


def test_w_series_first_level_is_delta():
    w = w_series([], 1)
    assert len(w.num) == 1 and w.num[0] == DELTA


@settings(max_examples=10)
@given(st.lists(st.integers(-2, 2), max_size=1), st.integers(-2, 2))
def test_w_recursion(cs, c):
    xs = [RHO.inverse() * Q**k * expand(qint(k)) for k in cs]
    x = RHO * Q ** (-c) * expand(qint(c))
    r = len(xs) + 1
    assert w_series(xs + [x], r + 1) == w_recursion_step(w_series(xs, r), x)


def test_e_diag_single_box():
    t = tableau_max(1, bip(), 1, 1)
    assert e_diag(t) == qdelta(0)
    assert e_diag_via_residue(t) == DELTA


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_residue_identity(r):
    for p in enumerate_lambda(r, 1):
        for x in enumerate_updown(r, 1, p.shape, p.f):
            if x[r - 1] == x[r + 1]:
                assert e_diag_via_residue(x) == expand(e_diag(x))


def test_e_diag_requires_wall_return():
    t = tableau_max(0, bip((1,), (1,)), 1, 1)
    with pytest.raises(WallMismatch):
        e_diag(t)


def test_rect_hom_coeff_example():
    assert rect_hom_coeff(2, 3, 1, 1) == DELTA - RHO * Q.inverse()


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_rect_hom_coeff_is_shifted_delta_bracket(a, b, c, d):
    m = a - b + c - d
    assert rect_hom_coeff(a, b, c, d) == Q**m * expand(qdelta(m))


@pytest.mark.parametrize("cfg", RECT_CONFIGS, ids=str)
def test_rect_coefficient_vanishes_at_inverse_locus(cfg):
    m = cfg[0] - cfg[1] + cfg[2] - cfg[3]
    assert rect_vanishes_at(*cfg, -m)


@pytest.mark.xfail(strict=True, reason="coefficient vanishes at rho^2 = q^(-2m), not q^(2m); see decisions ledger")
def test_rect_coefficient_vanishes_at_stated_locus():
    for cfg in RECT_CONFIGS:
        m = cfg[0] - cfg[1] + cfg[2] - cfg[3]
        assert rect_vanishes_at(*cfg, m)
