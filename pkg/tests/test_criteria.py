import pytest

from treecsf.criteria import (
    CRITERION_NAMES,
    caterpillar_sink2,
    check_cpet,
    check_n22,
    check_sink2,
    check_structural,
    run_all,
    sink2_lower_bound,
)
from treecsf.csf import b_table, e_expansion, sink_counts, sink_counts_bruteforce
from treecsf.tree import (
    enumerate_free_trees,
    from_edges,
    make_caterpillar,
    make_path,
    make_spider,
    make_star,
)


def case22_witness_tree():
    """A 9-vertex tree with a pendent 4-path, a pendent claw, and exactly
    one pendent 2-path: path 0-1-2-3 into hub 4, claw centered at 5."""
    return from_edges(
        9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (5, 8)]
    )


def test_check_cpet():
    assert not check_cpet(b_table(make_spider((6, 4, 1, 1)))).violated
    result = check_cpet(b_table(make_star(4)))
    assert result.violated
    assert result.witness == {"missing_type": [2, 2, 1]}
    for n in range(2, 10):
        assert not check_cpet(b_table(make_path(n))).violated


def test_check_n22():
    t = case22_witness_tree()
    bt = b_table(t)
    result = check_n22(bt)
    assert result.applicable and result.violated
    assert result.witness["b_n4_2_2"] == 1
    assert result.witness["b_n2_2"] == 1
    assert result.witness["b_n4_4"] >= 2
    assert not check_n22(b_table(make_path(10))).violated
    assert not check_n22(b_table(make_path(8))).applicable


def test_check_structural_cases():
    claw = check_structural(make_star(3))
    assert claw.violated and claw.witness["case"] == 1
    two = check_structural(case22_witness_tree())
    assert two.violated and two.witness["case"] == 2
    # two pendent 2-paths on adjacent spine vertices, no pendent 4-path
    three = check_structural(make_spider((2, 2, 1, 1)))
    assert three.violated and three.witness["case"] == 3
    ok = check_structural(make_path(6))
    assert not ok.violated
    assert not check_structural(make_path(3)).applicable


def test_structural_spares_small_epositive_spider():
    # legs (2,1,1): e-positive, yet it has one pendent 2-path and a claw
    result = check_structural(make_spider((2, 1, 1)))
    assert not result.violated


def test_sink2_lower_bound():
    assert sink2_lower_bound(12, 7) == 161
    # second term vanishes when 2l = n
    n, l = 12, 6
    assert sink2_lower_bound(n, l) == sum(k * (n - k) for k in range(6, 11))
    assert sink2_lower_bound(4, 3) == 7
    with pytest.raises(ValueError):
        sink2_lower_bound(4, 4)
    with pytest.raises(ValueError):
        sink2_lower_bound(1, 2)


def test_sink2_bound_always_integer():
    for n in range(3, 61):
        for l in range(2, n):
            sink2_lower_bound(n, l)  # asserts integrality internally


def test_check_sink2():
    cat = make_caterpillar((1, 1, 2, 1, 2))
    result = check_sink2(cat, sink_counts(cat))
    assert result.violated
    assert result.witness["sink2"] == 125
    assert result.witness["required"] == 161
    p8 = make_path(8)
    assert not check_sink2(p8, sink_counts(p8)).violated
    star = make_star(3)
    result = check_sink2(star, sink_counts_bruteforce(star))
    assert result.witness["sink2"] == 3
    assert result.witness["required"] == 7
    assert result.violated
    assert not check_sink2(make_path(2), sink_counts(make_path(2))).applicable


def test_caterpillar_sink2_closed_form():
    assert caterpillar_sink2((1, 1, 2, 1, 2)) == 125
    assert caterpillar_sink2((1, 1)) == sink_counts_bruteforce(make_path(4))[2]
    assert caterpillar_sink2((2, 2)) == sink_counts_bruteforce(make_caterpillar((2, 2)))[2]
    with pytest.raises(ValueError):
        caterpillar_sink2((0, 1))
    with pytest.raises(ValueError):
        caterpillar_sink2(())


def test_caterpillar_sink2_against_expansion_and_bruteforce():
    # all leaf profiles with d <= 5 and entries <= 3 (interior zeros allowed)
    import itertools

    for d in range(1, 6):
        for alpha in itertools.product(range(4), repeat=d):
            if alpha[0] < 1 or alpha[-1] < 1:
                continue
            cat = make_caterpillar(alpha)
            if cat.n > 16:
                continue
            closed = caterpillar_sink2(alpha)
            assert closed == sink_counts(cat)[2]
            if cat.n <= 11:
                assert closed == sink_counts_bruteforce(cat)[2]


def test_run_all():
    verdict = run_all(make_caterpillar((1, 1, 2, 1, 2)), short_circuit=False)
    assert "sink2" in verdict.violated_names
    verdict = run_all(make_path(9), short_circuit=False)
    assert not verdict.any_violated
    assert [e.name for e in verdict] == list(CRITERION_NAMES)
    # short circuit stops at the first violation
    verdict = run_all(make_star(4))
    assert verdict.violated_names == ["structural"]
    with pytest.raises(ValueError):
        run_all(make_path(5), only=["bogus"])
    only = run_all(make_path(9), short_circuit=False, only=["cpet", "n22"])
    assert [e.name for e in only] == ["cpet", "n22"]


def test_run_all_never_violates_epositive_trees():
    # soundness sweep: no criterion fires on an e-positive tree
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            verdict = run_all(t, short_circuit=False)
            if verdict.any_violated:
                assert not e_expansion(t).e_positive, (n, verdict.violated_names)


def test_criteria_json():
    verdict = run_all(make_star(4), short_circuit=False)
    data = verdict.to_json_list()
    assert all(set(d) == {"name", "applicable", "violated", "witness"} for d in data)
