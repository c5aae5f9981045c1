"""Acceptance suite: one test per release criterion, exact tolerances.

Each test prints a single `[criterion NN] PASS` line on success (visible
with `pytest -s` or in captured output); a failed assertion fails the
test, which is the corresponding FAIL line in the pytest report.
"""

import json
import time

from treecsf.criteria import caterpillar_sink2, check_sink2, run_all, sink2_lower_bound
from treecsf.csf import (
    b_table,
    b_table_bruteforce,
    e_coefficient,
    e_expansion,
    p_expansion,
    reduced_stk_sum,
    sink_counts,
    sink_counts_bruteforce,
)
from treecsf.fixtures import fixture_tree
from treecsf.partition import Partition, enumerate_partitions
from treecsf.scan import ScanConfig, resume, run_scan
from treecsf.sympoly import SymPoly, e_to_p, p_to_e, specialize_ones
from treecsf.tabloid import enumerate_brick_tabloids, ordered_count, weight_sum
from treecsf.tree import canonical_code, enumerate_free_trees, make_caterpillar, make_spider

PROBE_17 = Partition((3,) + (2,) * 7)
PROBE_19 = Partition((3,) + (2,) * 8)


def _ok(num, text):
    print(f"[criterion {num:02d}] PASS  {text}")


def test_criterion_01_tabloid_anchors():
    tabs = enumerate_brick_tabloids((2, 2, 1, 1), (4, 2))
    assert len(tabs) == 4
    assert sorted(t.weight for t in tabs) == [2, 2, 2, 4]
    assert weight_sum((2, 2, 1, 1), (4, 2)) == 10
    assert ordered_count((2, 2, 1, 1), (4, 2)) == 3
    # steady-state cost of the two statistics is sub-millisecond
    start = time.perf_counter()
    for _ in range(100):
        assert weight_sum((2, 2, 1, 1), (4, 2)) == 10
        assert ordered_count((2, 2, 1, 1), (4, 2)) == 3
    per_call = (time.perf_counter() - start) / 200
    assert per_call < 1e-3
    _ok(1, f"w=10, |B|=4 with weights {{2,4,2,2}}, OB=3 ({per_call*1e6:.1f} us/call)")


def test_criterion_02_basis_roundtrip():
    start = time.perf_counter()
    for n in range(1, 10):
        for lam in enumerate_partitions(n):
            e = SymPoly.e(lam)
            assert p_to_e(e_to_p(e)) == e
            p = SymPoly.p(lam)
            assert e_to_p(p_to_e(p)) == p
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    _ok(2, f"e->p->e and p->e->p identities through degree 9 ({elapsed:.1f}s)")


def test_criterion_03_oracle_equivalence():
    start = time.perf_counter()
    trees = 0
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            trees += 1
            bt = b_table(t)
            assert bt.counts == b_table_bruteforce(t).counts
            assert sink_counts(t, bt).sinks == sink_counts_bruteforce(t).sinks
            report = e_expansion(t, bt)
            transition = {
                lam: int(c) for lam, c in p_to_e(p_expansion(t, bt)).terms.items()
            }
            nonzero = {lam: c for lam, c in report.coefficients.items() if c}
            assert nonzero == transition
    elapsed = time.perf_counter() - start
    assert elapsed < 300
    _ok(3, f"b/sink/e-coefficient oracle equivalence on {trees} trees ({elapsed:.1f}s)")


def test_criterion_04_chromatic_specialization():
    for n in range(1, 10):
        for t in enumerate_free_trees(n):
            poly = p_expansion(t)
            for k in range(1, 6):
                assert specialize_ones(poly, k) == k * (k - 1) ** (n - 1)
    _ok(4, "principal specialization equals k(k-1)^(n-1) for all trees n<=9, k<=5")


def test_criterion_05_caterpillar_example():
    alpha = (1, 1, 2, 1, 2)
    cat = make_caterpillar(alpha)
    closed = caterpillar_sink2(alpha)
    via_expansion = sink_counts(cat)[2]
    via_bruteforce = sink_counts_bruteforce(cat)[2]
    assert closed == via_expansion == via_bruteforce == 125
    assert sink2_lower_bound(12, 7) == 161
    verdict = check_sink2(cat, sink_counts(cat))
    assert verdict.violated
    _ok(5, "sink2(C(1,1,2,1,2)) = 125 by three routes; bound 161; violation reported")


def test_criterion_06_reduced_sum_example():
    t4 = fixture_tree("T4")
    bt = b_table(t4)
    expected = {
        (4, 4, 4, 4, 3): 1,
        (8, 4, 4, 3): 6,
        (12, 4, 3): 6,
        (8, 8, 3): 2,
        (16, 3): 3,
    }
    for lam, value in expected.items():
        assert bt.get(lam) == value
    assert reduced_stk_sum(t4, 3, 4, 4, table=bt) == -12
    _ok(6, "T4 b-values (1,6,6,2,3) and reduced sum -12")


def test_criterion_07_figure5_scan(tmp_path):
    budgets = {17: 600.0, 19: 7200.0}
    workers = {17: 2, 19: 1}
    fixture_codes = {
        17: {canonical_code(fixture_tree("T1")), canonical_code(fixture_tree("T2"))},
        19: {canonical_code(fixture_tree("T3")), canonical_code(fixture_tree("T4"))},
    }
    probes = {17: PROBE_17, 19: PROBE_19}
    timings = {}
    for n in (17, 19):
        out = tmp_path / f"cpet{n}.jsonl"
        config = ScanConfig(
            n_min=n,
            n_max=n,
            min_delta=4,
            max_delta=4,
            include_spiders=False,
            mode="find_cpet",
            workers=workers[n],
            output_path=str(out),
        )
        start = time.perf_counter()
        summary = run_scan(config)
        elapsed = time.perf_counter() - start
        timings[n] = elapsed
        assert elapsed < budgets[n]
        found = summary["cpet_trees"].get(n, [])
        assert len(found) == 2
        assert set(found) == fixture_codes[n]
        cpet_records = [
            rec
            for rec in map(json.loads, out.read_text().splitlines())
            if rec["cpet"]
        ]
        assert len(cpet_records) == 2
        for rec in cpet_records:
            neg = rec["first_negative"]
            assert neg is not None
            assert tuple(neg["partition"]) == tuple(probes[n])
            assert neg["value"] < 0
    _ok(
        7,
        "scan finds exactly the four reference trees, probe coefficient negative "
        f"(n=17: {timings[17]:.0f}s, n=19: {timings[19]:.0f}s)",
    )


def test_criterion_08_conjecture_slice(tmp_path):
    out = tmp_path / "conj13.jsonl"
    config = ScanConfig(
        n_min=1,
        n_max=13,
        min_delta=4,
        include_spiders=True,
        mode="verify_conjecture",
        output_path=str(out),
    )
    start = time.perf_counter()
    summary = run_scan(config)
    elapsed = time.perf_counter() - start
    assert elapsed < 600
    assert summary["e_positive_trees"] == []
    analyzed = sum(summary["analyzed"].values())
    assert analyzed > 1000  # the filter keeps every max-degree >= 4 class
    for rec in map(json.loads, out.read_text().splitlines()):
        assert not rec["e_positive"]
    _ok(8, f"no e-positive tree with max degree >= 4 and n <= 13 ({analyzed} classes, {elapsed:.0f}s)")


def test_criterion_09_cpet_without_epositivity():
    spider = make_spider((6, 4, 1, 1))
    bt = b_table(spider)
    assert bt.missing_types() == []
    report = e_expansion(spider, bt)
    assert not report.e_positive
    _ok(9, "S(6,4,1,1) admits every type yet has a negative e-coefficient")


def test_criterion_10_criteria_soundness_sweep():
    checked = 0
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            checked += 1
            bt = b_table(t)
            report = e_expansion(t, bt)
            sinks = sink_counts(t, bt)
            assert report.coefficients[Partition((n,))] == n
            assert sinks[1] == n
            assert sinks.total() == 2 ** (n - 1)
            verdict = run_all(t, short_circuit=False)
            if verdict.any_violated:
                assert not report.e_positive, (n, verdict.violated_names)
    _ok(10, f"no false accusation and sink identities hold on {checked} trees")


def test_criterion_11_resume_byte_identical(tmp_path):
    base = dict(
        n_min=12,
        n_max=12,
        min_delta=4,
        include_spiders=True,
        mode="verify_conjecture",
    )
    full_out = tmp_path / "full.jsonl"
    run_scan(ScanConfig(output_path=str(full_out), **base))
    reference = full_out.read_bytes()

    part_out = tmp_path / "part.jsonl"
    config = ScanConfig(
        output_path=str(part_out),
        checkpoint_path=str(tmp_path / "ck.json"),
        checkpoint_every_trees=20,
        batch_size=16,
        **base,
    )
    total = len(reference.splitlines())
    interrupted = run_scan(config, _stop_after=total // 2)
    assert interrupted["interrupted"]
    resume(config)
    assert part_out.read_bytes() == reference
    _ok(11, f"interrupted-and-resumed scan reproduces all {total} records byte for byte")
