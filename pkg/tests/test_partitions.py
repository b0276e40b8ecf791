from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from qwbrauer.errors import ContextMismatch, InvalidShape, NodeOutOfDiagram
from qwbrauer.partitions import (
    Bipartition,
    Partition,
    addable_nodes,
    bip,
    conjugate,
    content,
    dominance_leq,
    e_restricted_partition,
    enumerate_lambda,
    hook_length,
    lambda_order,
    littlewood_richardson,
    partitions_of,
    point,
    removable_nodes,
    restriction_multiplicity,
    standard_count,
    standard_count_by_paths,
    updown_count_formula,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


def parts(max_size=7):
    return st.integers(0, max_size).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@pytest.mark.parametrize("n", range(9))
def test_partition_counts(n):
    assert len(partitions_of(n)) == PARTITION_COUNTS[n]


@given(parts())
def test_conjugate_is_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p).size == p.size


@given(parts())
def test_hook_formula_matches_branching(p):
    assert standard_count(p) == standard_count_by_paths(p)


@given(parts())
def test_hook_lengths_of_conjugate(p):
    c = conjugate(p)
    assert sorted(hook_length(p, (i, j)) for i, j in p.nodes()) == sorted(hook_length(c, (j, i)) for i, j in p.nodes())


@given(parts())
def test_add_remove_round_trip(p):
    for x in addable_nodes(p):
        assert p.add(x).remove(x) == p
        assert x in removable_nodes(p.add(x))


def test_remove_rejects_inner_node():
    with pytest.raises(NodeOutOfDiagram):
        Partition((2, 1)).remove((1, 1))


def test_content_is_column_minus_row():
    assert content((1, 3)) == 2
    assert content((3, 1)) == -2


@given(parts(6), parts(6))
def test_dominance_reverses_under_conjugation(a, b):
    if a.size == b.size:
        assert dominance_leq(a, b) == dominance_leq(conjugate(b), conjugate(a))


def test_e_restricted():
    assert e_restricted_partition(Partition((2, 1)), 2)
    assert not e_restricted_partition(Partition((3, 1)), 2)
    assert not e_restricted_partition(Partition((2,)), 2)
    assert e_restricted_partition(Partition((5,)), None)


@pytest.mark.parametrize("r,t", [(r, n - r) for n in range(7) for r in range(n + 1)])
def test_cell_dimensions_square_sum_to_algebra_dimension(r, t):
    # the walled Brauer algebra has dimension (r+t)!
    total = sum(updown_count_formula(p.f, p.shape, r, t) ** 2 for p in enumerate_lambda(r, t))
    assert total == factorial(r + t)


def test_lambda_examples():
    pts = enumerate_lambda(1, 1)
    assert [(p.f, str(p.shape)) for p in pts] == [(0, "1|1"), (1, "-|-")]
    assert len(enumerate_lambda(2, 2)) == 4 + 1 + 1


def test_point_validation():
    point(1, bip((1,), (1,)), 2, 2)
    with pytest.raises(InvalidShape):
        point(1, bip((2,), (1,)), 2, 2)
    with pytest.raises(InvalidShape):
        point(3, bip(), 2, 3)


def test_lambda_order():
    a = point(0, bip((2,), (1,)), 2, 1)
    b = point(0, bip((1, 1), (1,)), 2, 1)
    c = point(1, bip((1,), ()), 2, 1)
    assert lambda_order(b, a) == "less"
    assert lambda_order(a, c) == "less"
    assert lambda_order(a, a) == "equal"
    with pytest.raises(ContextMismatch):
        lambda_order(a, point(0, bip((1,), (1,)), 1, 1))


def test_incomparable_weights():
    a = point(0, bip((2,), (1, 1)), 2, 2)
    b = point(0, bip((1, 1), (2,)), 2, 2)
    assert lambda_order(a, b) == "incomparable"


def test_lr_known_values():
    assert littlewood_richardson(Partition((2, 1)), Partition((2, 1)), Partition((3, 2, 1))) == 2
    assert littlewood_richardson(Partition((1,)), Partition((1,)), Partition((2,))) == 1
    assert littlewood_richardson(Partition((2,)), Partition((2,)), Partition((2, 2))) == 1
    assert littlewood_richardson(Partition((2,)), Partition((1, 1)), Partition((2, 2))) == 0


@given(parts(4), parts(3))
def test_lr_product_dimension_identity(mu, tau):
    # induction from S_a x S_b to S_{a+b} has dimension C(a+b, a) f^mu f^tau
    n = mu.size + tau.size
    lhs = sum(littlewood_richardson(mu, tau, lam) * standard_count(lam) for lam in partitions_of(n))
    assert lhs == comb(n, mu.size) * standard_count(mu) * standard_count(tau)


@given(parts(4), parts(3))
def test_lr_symmetry(mu, tau):
    for lam in partitions_of(mu.size + tau.size):
        assert littlewood_richardson(mu, tau, lam) == littlewood_richardson(tau, mu, lam)


def test_restriction_multiplicity_trivial_case():
    lam = bip((2, 1), (1,))
    assert restriction_multiplicity(0, lam, lam) == 1
    assert restriction_multiplicity(1, bip((2,), ()), lam) == 1


@pytest.mark.parametrize("text", ["2,1|1", "-|3", "1,1|-"])
def test_bipartition_text_round_trip(text):
    assert str(Bipartition.parse(text)) == text


def test_bipartition_parse_errors():
    with pytest.raises(InvalidShape):
        Bipartition.parse("2,1")
    with pytest.raises(InvalidShape):
        Partition.parse("2,x")
    with pytest.raises(InvalidShape):
        Partition.parse("1,2")
