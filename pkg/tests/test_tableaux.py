import pytest
from hypothesis import given, strategies as st

from qwbrauer.errors import ContextMismatch, IndexOutOfRange, InvalidShape, MoveAtWall
from qwbrauer.partitions import Bipartition, bip, enumerate_lambda, updown_count_formula
from qwbrauer.scalars import ExactScalar
from qwbrauer.tableaux import (
    UpDownTableau,
    apply_move,
    chain_down,
    chain_up,
    compare,
    content_vector,
    enumerate_updown,
    hat,
    make_tableau,
    move_blocked_by_row_or_column,
    tableau_max,
    tableau_min,
    tilde,
    validate,
)

POINTS = [p for n in range(7) for r in range(n + 1) for p in enumerate_lambda(r, n - r)]


def tab(shapes, r, t):
    return make_tableau([Bipartition.parse(s) for s in shapes], r, t)


@pytest.fixture(scope="module")
def b22():
    return {
        "t": tab(["-|-", "1|-", "2|-", "1|-", "1|1"], 2, 2),
        "s": tab(["-|-", "1|-", "1,1|-", "1|-", "1|1"], 2, 2),
        "u": tab(["-|-", "1|-", "2|-", "2|1", "1|1"], 2, 2),
        "v": tab(["-|-", "1|-", "1,1|-", "1,1|1", "1|1"], 2, 2),
    }


def test_b22_enumeration_order(b22):
    tabs = enumerate_updown(2, 2, bip((1,), (1,)), 1)
    assert tabs == [b22["t"], b22["s"], b22["u"], b22["v"]]


@pytest.mark.parametrize("p", POINTS, ids=str)
def test_counts_match_formula(p):
    assert len(enumerate_updown(p.r, p.t, p.shape, p.f)) == updown_count_formula(p.f, p.shape, p.r, p.t)


@pytest.mark.parametrize("p", POINTS, ids=str)
def test_extremes_and_strict_order(p):
    tabs = enumerate_updown(p.r, p.t, p.shape, p.f)
    assert tabs[0] == tableau_max(p.f, p.shape, p.r, p.t)
    assert tableau_min(p.f, p.shape, p.r, p.t) in tabs
    for a, b in zip(tabs, tabs[1:]):
        assert compare(b, a) < 0 and compare(a, b) > 0
    assert all(validate(x)[0] for x in tabs)


@pytest.mark.parametrize("p", [p for p in POINTS if p.r + p.t <= 5], ids=str)
def test_moves_are_involutions(p):
    for x in enumerate_updown(p.r, p.t, p.shape, p.f):
        for k in range(1, x.n):
            if k == x.r:
                continue
            y = apply_move(x, k)
            if y is None:
                continue
            assert y != x and apply_move(y, k) == x
            assert not move_blocked_by_row_or_column(x, k)


def test_move_errors(b22):
    with pytest.raises(MoveAtWall):
        apply_move(b22["t"], 2)
    with pytest.raises(IndexOutOfRange):
        apply_move(b22["t"], 4)


def test_b22_moves(b22):
    assert apply_move(b22["t"], 1) is None  # same row
    assert apply_move(b22["t"], 3) == b22["u"]
    assert apply_move(b22["u"], 3) == b22["t"]
    assert apply_move(b22["s"], 3) == b22["v"]


def test_b22_distinguished(b22):
    shape = bip((1,), (1,))
    assert tableau_max(1, shape, 2, 2) == b22["t"]
    assert tableau_min(1, shape, 2, 2) == b22["s"]


def test_invalid_tableau_rejected():
    with pytest.raises(InvalidShape):
        tab(["-|-", "1|-", "1|1", "1|-"], 2, 2)
    with pytest.raises(InvalidShape):
        tab(["1|-", "2|-"], 2, 0)


def test_compare_rejects_mixed_contexts(b22):
    other = tableau_max(0, bip((1,), (1,)), 1, 1)
    with pytest.raises(ContextMismatch):
        compare(b22["t"], other)


def test_contents_of_b22_max(b22):
    rho, q, d = ExactScalar.rho(), ExactScalar.q(), ExactScalar.delta()
    # steps: add (1,1), add (1,2) content 1, remove (1,2), add (1,1) on the right
    assert content_vector(b22["t"]) == (ExactScalar.zero(), rho.inverse() * q, d - rho.inverse() * q, ExactScalar.zero())


@pytest.mark.parametrize("p", [p for p in POINTS if p.r + p.t >= 1], ids=str)
def test_hat_and_tilde(p):
    for x in enumerate_updown(p.r, p.t, p.shape, p.f):
        h = hat(x)
        assert h.steps == x.steps[:-1]
        y = tilde(x)
        assert y.shape == x.shape and hat(y) == tableau_max(h.f, h.shape, h.r, h.t)


@given(st.integers(1, 8), st.integers(0, 8))
def test_chains(i, j):
    if i <= j:
        assert chain_up(i, j) == list(range(i, j))
    else:
        assert chain_down(i, j) == list(range(i - 1, j - 1, -1))


def test_to_json_shape(b22):
    data = b22["t"].to_json()
    assert data[0] == [[], []] and data[-1] == [[1], [1]]
