"""Necessary conditions for a tree to be e-positive.

Each check certifies non-e-positivity when it fires; none of them can
certify e-positivity (only the full expansion decides that).  The battery:

  * cpet        - some partition type has no connected partition
  * n22         - b_(n-4,2,2) falls below ceil((b_(n-2,2) + b_(n-4,4)) / 2)
  * structural  - pendent-subtree patterns that force one of the above
  * sink2       - too few acyclic orientations with exactly 2 sinks

For caterpillars the 2-sink count also has a closed form, which `run_all`
uses instead of the full expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from .csf import BTable, SinkTable, b_table, sink_counts
from .tree import Tree, degree_stats, make_path, make_star, pendent_count


@dataclass
class CriterionResult:
    name: str
    applicable: bool
    violated: bool
    witness: Optional[dict] = None

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "violated": self.violated,
            "witness": self.witness,
        }


@dataclass
class CriteriaVerdict:
    entries: list[CriterionResult] = field(default_factory=list)

    @property
    def any_violated(self) -> bool:
        return any(e.violated for e in self.entries)

    @property
    def violated_names(self) -> list[str]:
        return [e.name for e in self.entries if e.violated]

    def __iter__(self):
        return iter(self.entries)

    def to_json_list(self) -> list[dict]:
        return [e.to_json_dict() for e in self.entries]


def check_cpet(b: BTable) -> CriterionResult:
    """Violated iff some partition of n has no connected partition.

    The witness is the first missing type in increasing lexicographic
    order (the small-part types are the structurally informative ones).
    """
    missing = b.missing_types()
    if missing:
        witness = {"missing_type": list(min(missing))}
        return CriterionResult("cpet", True, True, witness)
    return CriterionResult("cpet", True, False)


def check_n22(b: BTable) -> CriterionResult:
    """The three-value inequality on b_(n-4,2,2); applicable for n >= 9."""
    n = b.n
    if n < 9:
        return CriterionResult("n22", False, False)
    left = b.get((n - 4, 2, 2))
    b_n22 = b.get((n - 2, 2))
    b_n44 = b.get((n - 4, 4))
    bound = -((b_n22 + b_n44) // -2)  # ceil division
    witness = {
        "b_n4_2_2": left,
        "b_n2_2": b_n22,
        "b_n4_4": b_n44,
        "required": bound,
    }
    return CriterionResult("n22", True, left < bound, witness)


def check_structural(t: Tree) -> CriterionResult:
    """Pendent-pattern cases that rule out e-positivity:

    (1) no pendent 2-vertex path (so no connected partition of type (n-2,2));
    (2) exactly one pendent 2-vertex path and at least one pendent claw;
    (3) exactly two pendent 2-vertex paths and no pendent 4-vertex path.

    Case (1) applies from n >= 4.  Cases (2) and (3) are gated to n >= 6
    and n >= 5: the 5-vertex spider with legs (2,1,1) is e-positive yet
    matches the case (2) pattern, so firing there would be unsound.
    """
    if t.n < 4:
        return CriterionResult("structural", False, False)
    p2 = pendent_count(t, make_path(2))
    witness: dict = {"pendent_p2": p2}
    if p2 == 0:
        witness["case"] = 1
        return CriterionResult("structural", True, True, witness)
    if p2 == 1 and t.n >= 6:
        claws = pendent_count(t, make_star(3))
        witness["pendent_claw"] = claws
        if claws >= 1:
            witness["case"] = 2
            return CriterionResult("structural", True, True, witness)
    if p2 == 2 and t.n >= 5:
        p4 = pendent_count(t, make_path(4))
        witness["pendent_p4"] = p4
        if p4 == 0:
            witness["case"] = 3
            return CriterionResult("structural", True, True, witness)
    return CriterionResult("structural", True, False, witness)


def sink2_lower_bound(n: int, l: int) -> int:
    """Minimum number of 2-sink acyclic orientations an e-positive tree
    with n vertices and l leaves must have:

        sum of k*(n-k) for k = ceil(n/2) .. n-2, plus (2l-n)(n-1)/2.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not (2 <= l <= n - 1):
        raise ValueError(f"leaf count {l} out of range for n={n}")
    base = sum(k * (n - k) for k in range(-(n // -2), n - 1))
    extra2 = (2 * l - n) * (n - 1)
    assert extra2 % 2 == 0, "the bound is always an integer"
    return base + extra2 // 2


def check_sink2(t: Tree, sinks: SinkTable) -> CriterionResult:
    """Violated iff sink(T, 2) is below the leaf-count lower bound.

    Not applicable for n < 3 (a 2-vertex tree has n-1 < l)."""
    stats = degree_stats(t)
    if t.n < 3:
        return CriterionResult("sink2", False, False)
    bound = sink2_lower_bound(t.n, stats.leaf_count)
    have = sinks.get(2)
    witness = {"sink2": have, "required": bound, "n": t.n, "leaves": stats.leaf_count}
    return CriterionResult("sink2", True, have < bound, witness)


def caterpillar_sink2(alpha: Iterable[int]) -> int:
    """Closed form for the number of 2-sink acyclic orientations of the
    caterpillar C(alpha):

        sum_i C(alpha_i, 2)
      + sum_i alpha_i * sum_{j != i} |j - i|
      + sum_{i < j} (alpha_i * alpha_j * (j - i + 1) + (j - i - 1)).

    The three groups count sink pairs that are leaf/leaf on one spine
    vertex, leaf/leaf on distinct spine vertices or leaf/spine, and
    spine/spine respectively.
    """
    a = [int(x) for x in alpha]
    d = len(a)
    if d < 1 or a[0] < 1 or a[-1] < 1 or any(x < 0 for x in a):
        raise ValueError("not a valid caterpillar leaf profile")
    same = sum(comb(x, 2) for x in a)
    leaf_spine = sum(
        a[i] * sum(abs(j - i) for j in range(d) if j != i) for i in range(d)
    )
    cross = 0
    for i in range(d):
        for j in range(i + 1, d):
            cross += a[i] * a[j] * (j - i + 1) + (j - i - 1)
    return same + leaf_spine + cross


CRITERION_NAMES = ("structural", "cpet", "n22", "sink2")


def _sink2_entry(t: Tree, bt: BTable) -> CriterionResult:
    """sink2 check, using the caterpillar closed form when it applies."""
    stats = degree_stats(t)
    if t.n < 3:
        return CriterionResult("sink2", False, False)
    if stats.is_caterpillar:
        have = caterpillar_sink2(_leaf_profile(t))
        bound = sink2_lower_bound(t.n, stats.leaf_count)
        witness = {"sink2": have, "required": bound, "n": t.n, "leaves": stats.leaf_count}
        return CriterionResult("sink2", True, have < bound, witness)
    return check_sink2(t, sink_counts(t, bt))


def run_all(t: Tree, short_circuit: bool = True, only: Optional[Iterable[str]] = None) -> CriteriaVerdict:
    """Evaluate the battery, cheapest first; optionally stop at the first
    violation.  A verdict with no violations never claims e-positivity."""
    selected = CRITERION_NAMES if only is None else tuple(only)
    unknown = set(selected) - set(CRITERION_NAMES)
    if unknown:
        raise ValueError(f"unknown criteria {sorted(unknown)}; choose from {CRITERION_NAMES}")
    verdict = CriteriaVerdict()
    bt: Optional[BTable] = None

    for name in CRITERION_NAMES:
        if name not in selected:
            continue
        if name == "structural":
            entry = check_structural(t)
        else:
            if bt is None:
                bt = b_table(t)
            if name == "cpet":
                entry = check_cpet(bt)
            elif name == "n22":
                entry = check_n22(bt)
            else:
                entry = _sink2_entry(t, bt)
        verdict.entries.append(entry)
        if short_circuit and entry.violated:
            return verdict
    return verdict


def _leaf_profile(t: Tree) -> list[int]:
    """Recover alpha for a caterpillar with n >= 3: leaves per spine vertex,
    in spine order."""
    degs = t.degrees()
    core = [v for v in range(t.n) if degs[v] >= 2]
    core_set = set(core)
    core_deg = {v: sum(1 for w in t.adj[v] if w in core_set) for v in core}
    start = next(v for v in core if core_deg[v] <= 1)
    spine = [start]
    prev = -1
    while True:
        nxt = [w for w in t.adj[spine[-1]] if w in core_set and w != prev]
        if not nxt:
            break
        prev = spine[-1]
        spine.append(nxt[0])
    return [sum(1 for w in t.adj[v] if degs[w] == 1) for v in spine]
