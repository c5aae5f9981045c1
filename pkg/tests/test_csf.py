import random
from fractions import Fraction
from math import gcd, prod

import pytest

from treecsf.csf import (
    BRUTE_FORCE_EDGE_LIMIT,
    b_table,
    b_table_bruteforce,
    coefficient_stk,
    e_coefficient,
    e_expansion,
    p_expansion,
    reduced_stk_sum,
    sink_counts,
    sink_counts_bruteforce,
)
from treecsf.fixtures import fixture_tree
from treecsf.partition import Partition, coarsenings, enumerate_partitions
from treecsf.sympoly import SymPoly, p_to_e, specialize_ones
from treecsf.tabloid import weight_sum
from treecsf.tree import (
    enumerate_free_trees,
    from_edges,
    make_caterpillar,
    make_path,
    make_spider,
    make_star,
    pendent_count,
)


def random_tree(n, rng):
    """Random labelled tree via a random attachment sequence."""
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return from_edges(n, edges)


def test_b_table_p4():
    bt = b_table(make_path(4))
    assert {tuple(k): v for k, v in bt.counts.items()} == {
        (4,): 1, (3, 1): 2, (2, 2): 1, (2, 1, 1): 3, (1, 1, 1, 1): 1,
    }
    assert bt.total() == 8


def test_b_table_star():
    bt = b_table(make_star(3))
    assert bt.get((2, 1, 1)) == 3
    assert bt.get((2, 2)) == 0
    assert bt.missing_types() == [Partition((2, 2))]


def test_b_table_single_vertex():
    bt = b_table(make_path(1))
    assert {tuple(k): v for k, v in bt.counts.items()} == {(1,): 1}
    assert b_table_bruteforce(make_path(1)).counts == bt.counts


def test_b_table_basic_invariants():
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            bt = b_table(t)
            assert bt.get((n,)) == 1
            assert bt.get((1,) * n) == 1
            assert bt.total() == 2 ** (n - 1)


def test_b_table_matches_bruteforce_exhaustive():
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            assert b_table(t).counts == b_table_bruteforce(t).counts


def test_b_table_matches_bruteforce_random_large():
    rng = random.Random(90125)
    for n in range(13, 21):
        for _ in range(25):
            t = random_tree(n, rng)
            assert b_table(t).counts == b_table_bruteforce(t).counts


def test_bruteforce_guard():
    with pytest.raises(ValueError):
        b_table_bruteforce(make_path(BRUTE_FORCE_EDGE_LIMIT + 1))
    with pytest.raises(ValueError):
        sink_counts_bruteforce(make_path(23))


def test_leaf_and_pendent_identities():
    for n in range(3, 11):
        for t in enumerate_free_trees(n):
            bt = b_table(t)
            leaves = sum(1 for v in range(t.n) if t.degree(v) == 1)
            assert bt.get((n - 1, 1)) == leaves
            assert bt.get((n - 2, 2)) == pendent_count(t, make_path(2))


def test_p_expansion_p2():
    poly = p_expansion(make_path(2))
    assert poly.basis == "p"
    assert poly.terms == {
        Partition((1, 1)): Fraction(1),
        Partition((2,)): Fraction(-1),
    }
    assert p_expansion(make_path(1)).terms == {Partition((1,)): Fraction(1)}


def test_chromatic_polynomial_specialization():
    for n in range(1, 10):
        for t in enumerate_free_trees(n):
            poly = p_expansion(t)
            for k in range(1, 6):
                assert specialize_ones(poly, k) == k * (k - 1) ** (n - 1)


def test_e_coefficient_anchors():
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            assert e_coefficient(t, (n,)) == n
    assert e_coefficient(make_path(3), (2, 1)) == 1


def test_e_coefficient_validates_degree():
    with pytest.raises(ValueError):
        e_coefficient(make_path(3), (2, 2))


def test_e_expansion_matches_transition_route():
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            report = e_expansion(t)
            via_transition = p_to_e(p_expansion(t))
            expected = {
                lam: int(c) for lam, c in via_transition.terms.items()
            }
            nonzero = {lam: c for lam, c in report.coefficients.items() if c != 0}
            assert nonzero == expected


def test_e_expansion_reports():
    for n in range(2, 11):
        assert e_expansion(make_path(n)).e_positive
    rep = e_expansion(make_star(3))
    assert not rep.e_positive
    assert Partition((2, 2)) in rep.missing_types
    assert rep.first_negative is not None
    lam, value = rep.first_negative
    assert rep.coefficients[lam] == value < 0
    # first negative comes first in decreasing lex order
    for other in enumerate_partitions(4):
        if other > lam:
            assert rep.coefficients[Partition(other)] >= 0


def test_epositive_implies_cpet():
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            rep = e_expansion(t)
            if rep.missing_types:
                assert not rep.e_positive


def test_ceiling_inequality_equivalence():
    # positivity of one coefficient is the same as the b-value clearing the
    # ceiling of the weighted alternating sum over strict coarsenings
    for n in range(2, 11):
        for t in enumerate_free_trees(n):
            bt = b_table(t)
            rep = e_expansion(t, bt)
            for lam in enumerate_partitions(n):
                rhs = 0
                for mu in coarsenings(lam):
                    if len(mu) == len(lam):
                        continue
                    sign = -1 if (len(lam) - len(mu) - 1) % 2 else 1
                    rhs += sign * bt.get(mu) * weight_sum(lam, mu)
                bound = -(rhs // -prod(lam))  # ceil
                assert (rep.coefficients[Partition(lam)] >= 0) == (bt.get(lam) >= bound)


def test_sink_counts_anchors():
    assert sink_counts(make_path(2)).sinks == {1: 2}
    assert sink_counts(make_path(3)).sinks == {1: 3, 2: 1}
    assert sink_counts_bruteforce(make_path(2)).sinks == {1: 2}
    assert sink_counts_bruteforce(make_path(3)).sinks == {1: 3, 2: 1}
    cat = make_caterpillar((1, 1, 2, 1, 2))
    assert sink_counts(cat)[2] == 125
    assert sink_counts_bruteforce(cat)[2] == 125


def test_sink_counts_match_bruteforce():
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            assert sink_counts(t).sinks == sink_counts_bruteforce(t).sinks


def test_sink_count_invariants():
    for n in range(1, 12):
        for t in enumerate_free_trees(n):
            table = sink_counts(t)
            assert table[1] == n or n == 1  # single vertex: one 1-sink orientation
            assert table.total() == 2 ** (n - 1)
    assert sink_counts(make_path(1)).sinks == {1: 1}


def _valid_stk(n):
    for t_param in range(2, n):
        for k in range(0, n // t_param + 1):
            s = n - k * t_param
            if s < 2:
                continue
            if gcd(s, t_param) == 1 or s > k * t_param or (
                t_param % s == 0 and t_param // s >= 2
            ):
                yield s, t_param, k


def test_coefficient_stk_matches_generic():
    for n in range(4, 13):
        trees = list(enumerate_free_trees(n))
        sample = trees if n <= 9 else trees[::7]
        for t in sample:
            bt = b_table(t)
            for s, t_param, k in _valid_stk(n):
                shape = Partition((s,) + (t_param,) * k)
                assert coefficient_stk(t, s, t_param, k, table=bt) == e_coefficient(
                    t, shape, table=bt
                )


def test_coefficient_stk_larger_trees():
    rng = random.Random(5)
    for n in (13, 14, 15):
        for _ in range(4):
            t = random_tree(n, rng)
            for s, t_param, k in _valid_stk(n):
                assert coefficient_stk(t, s, t_param, k) == e_coefficient(
                    t, Partition((s,) + (t_param,) * k)
                )


def test_stk_preconditions():
    t9 = make_path(9)
    with pytest.raises(ValueError):
        coefficient_stk(t9, 1, 2, 4)  # s < 2
    with pytest.raises(ValueError):
        coefficient_stk(t9, 3, 2, 2)  # wrong total
    with pytest.raises(ValueError):
        coefficient_stk(make_path(8), 4, 2, 2)  # gcd 2, no relaxation applies
    # relaxations: s > k*t, or t a proper multiple of s
    assert coefficient_stk(make_path(8), 6, 2, 1) == e_coefficient(make_path(8), (6, 2))
    assert coefficient_stk(make_path(10), 2, 4, 2) == e_coefficient(make_path(10), (4, 4, 2))


def test_stk_k_zero():
    t = make_path(7)
    assert coefficient_stk(t, 7, 2, 0) == 7
    assert reduced_stk_sum(t, 7, 2, 0) == 1  # single term b_(n) = 1


def test_reduced_stk_anchor_t4():
    t4 = fixture_tree("T4")
    assert reduced_stk_sum(t4, 3, 4, 4) == -12


def test_reduced_stk_p7_nonnegative():
    # e-positive tree, so the reduced sum must be nonnegative; frozen value
    # hand-checked: -2*b_(4,3) + 4*b_(3,2,2) = -2*2 + 4*3 = 8 (segment
    # arrangements 4+3/3+4 and the three orderings of {3,2,2} along P7)
    value = reduced_stk_sum(make_path(7), 3, 2, 2)
    assert value >= 0
    assert value == 8


def test_reduced_negative_implies_not_epositive():
    for n in range(4, 13):
        for t in enumerate_free_trees(n):
            bt = b_table(t)
            verdicts = []
            for s, t_param, k in _valid_stk(n):
                if reduced_stk_sum(t, s, t_param, k, table=bt) < 0:
                    verdicts.append((s, t_param, k))
            if verdicts:
                assert not e_expansion(t, bt).e_positive


def test_fixture_probe_coefficients_negative():
    for name, k in (("T1", 7), ("T2", 7), ("T3", 8), ("T4", 8)):
        t = fixture_tree(name)
        shape = Partition((3,) + (2,) * k)
        value = coefficient_stk(t, 3, 2, k)
        assert value < 0
        assert value == e_coefficient(t, shape)
        rep = e_expansion(t)
        assert not rep.e_positive
        assert not rep.missing_types  # the fixtures admit every type


def test_example_b_values_t4():
    bt = b_table(fixture_tree("T4"))
    assert bt.get((4, 4, 4, 4, 3)) == 1
    assert bt.get((8, 4, 4, 3)) == 6
    assert bt.get((12, 4, 3)) == 6
    assert bt.get((8, 8, 3)) == 2
    assert bt.get((16, 3)) == 3


def test_spider_cpet_witness():
    # has a connected partition of every type yet is not e-positive
    spider = make_spider((6, 4, 1, 1))
    bt = b_table(spider)
    assert bt.missing_types() == []
    assert not e_expansion(spider, bt).e_positive
