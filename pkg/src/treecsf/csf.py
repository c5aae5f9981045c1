"""Chromatic symmetric function of a tree, computed exactly.

Everything is driven by the connected-partition counts b_lam: the number
of ways to delete edges so the remaining components have sizes lam.  From
the b table follow the power-sum expansion

    X_T = sum over lam of (-1)^(n - len(lam)) * b_lam * p_lam,

the e-coefficients

    [e_lam] X_T = sum over coarsenings mu of lam of
                  (-1)^(len(lam) - len(mu)) * b_mu * w(lam, mu),

and the acyclic-orientation sink counts (sink(T, j) is the sum of the
e-coefficients over partitions of length j).  Brute-force twins of the
main computations are provided as oracles for testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .partition import Partition, _coarsening_tuples, _partition_tuples
from .sympoly import SymPoly
from .tabloid import weight_sum
from .tree import Tree

BRUTE_FORCE_EDGE_LIMIT = 24
BRUTE_FORCE_ORIENTATION_LIMIT = 22


@dataclass
class BTable:
    """Connected-partition counts of one tree: b_lam for every lam of n."""

    n: int
    counts: dict[Partition, int]

    def get(self, lam) -> int:
        key = lam if isinstance(lam, Partition) else Partition(lam)
        return self.counts.get(key, 0)

    def __getitem__(self, lam) -> int:
        return self.get(lam)

    def total(self) -> int:
        return sum(self.counts.values())

    def missing_types(self) -> list[Partition]:
        """Partitions of n with no connected partition, in decreasing lex order."""
        return [Partition(t) for t in _partition_tuples(self.n) if t not in self.counts]

    def items_dec_lex(self) -> list[tuple[Partition, int]]:
        return sorted(self.counts.items(), key=lambda kv: kv[0], reverse=True)


@dataclass
class EposReport:
    """Full e-expansion of a tree plus the derived positivity facts."""

    e_positive: bool
    coefficients: dict[Partition, int]
    first_negative: Optional[tuple[Partition, int]]
    missing_types: list[Partition]


@dataclass
class SinkTable:
    """Number of acyclic orientations with exactly j sinks, for j = 1..n."""

    n: int
    sinks: dict[int, int]

    def get(self, j: int) -> int:
        return self.sinks.get(j, 0)

    def __getitem__(self, j: int) -> int:
        return self.get(j)

    def total(self) -> int:
        return sum(self.sinks.values())


def _b_counts(t: Tree) -> dict[tuple[int, ...], int]:
    """Rooted dynamic program over (open block size, closed block sizes).

    Processing the tree bottom-up from vertex 0, the state at a vertex maps
    (size of the block still open at the vertex, sorted sizes of blocks
    already closed in its subtree) to the number of ways to achieve it.
    Merging a child either closes the child's open block or fuses it into
    the parent's open block; the root closes its open block at the end.
    """
    n = t.n
    adj = t.adj
    parent = [-1] * n
    order = [0]
    parent[0] = 0
    for v in order:
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    parent[0] = -1

    state: list[Optional[dict]] = [None] * n
    for v in reversed(order):
        st: dict[tuple[int, tuple[int, ...]], int] = {(1, ()): 1}
        for w in adj[v]:
            if parent[w] != v:
                continue
            child = state[w]
            state[w] = None
            new: dict[tuple[int, tuple[int, ...]], int] = {}
            for (po, pc), pcount in st.items():
                for (co, cc), ccount in child.items():
                    ways = pcount * ccount
                    merged = tuple(sorted(pc + cc, reverse=True))
                    # cut the edge to the child: its open block closes
                    k1 = (po, tuple(sorted(merged + (co,), reverse=True)))
                    new[k1] = new.get(k1, 0) + ways
                    # keep the edge: open blocks fuse
                    k2 = (po + co, merged)
                    new[k2] = new.get(k2, 0) + ways
            st = new
        state[v] = st

    table: dict[tuple[int, ...], int] = {}
    for (o, c), cnt in state[0].items():
        lam = tuple(sorted(c + (o,), reverse=True))
        table[lam] = table.get(lam, 0) + cnt
    return table


def b_table(t: Tree) -> BTable:
    """Exact connected-partition counts b_lam for every lam of t.n."""
    raw = _b_counts(t)
    return BTable(t.n, {Partition(k): v for k, v in raw.items()})


def b_table_bruteforce(t: Tree) -> BTable:
    """Oracle: tally component-size types over all 2^(n-1) edge subsets.

    Uses union-find with rollback along a depth-first walk of the subset
    tree.  Refuses trees beyond the enumeration guard.
    """
    n = t.n
    if n > BRUTE_FORCE_EDGE_LIMIT:
        raise ValueError(
            f"brute force enumerates 2^(n-1) subsets; refusing n={n} > {BRUTE_FORCE_EDGE_LIMIT}"
        )
    edge_list = t.edges()
    par = list(range(n))
    sz = [1] * n
    size_mult: dict[int, int] = {1: n}
    tally: dict[tuple[int, ...], int] = {}

    def find(x: int) -> int:
        while par[x] != x:
            x = par[x]
        return x

    def snapshot_type() -> tuple[int, ...]:
        sizes = []
        for s, c in size_mult.items():
            if c:
                sizes.extend([s] * c)
        return tuple(sorted(sizes, reverse=True))

    def rec(i: int) -> None:
        if i == len(edge_list):
            key = snapshot_type()
            tally[key] = tally.get(key, 0) + 1
            return
        # exclude edge i
        rec(i + 1)
        # include edge i
        u, v = edge_list[i]
        ru, rv = find(u), find(v)
        if sz[ru] < sz[rv]:
            ru, rv = rv, ru
        par[rv] = ru
        a, b = sz[ru], sz[rv]
        size_mult[a] -= 1
        size_mult[b] -= 1
        size_mult[a + b] = size_mult.get(a + b, 0) + 1
        sz[ru] = a + b
        rec(i + 1)
        sz[ru] = a
        size_mult[a + b] -= 1
        size_mult[b] += 1
        size_mult[a] += 1
        par[rv] = rv

    rec(0)
    return BTable(n, {Partition(k): v for k, v in tally.items()})


def p_expansion(t: Tree, table: Optional[BTable] = None) -> SymPoly:
    """Power-sum expansion of X_T: coefficient of p_lam is
    (-1)^(n - len(lam)) * b_lam."""
    bt = table if table is not None else b_table(t)
    n = t.n
    terms = {
        lam: Fraction(-cnt if (n - len(lam)) % 2 else cnt)
        for lam, cnt in bt.counts.items()
    }
    return SymPoly("p", n, terms)


def _e_coefficient_from_counts(counts: dict, lam: tuple[int, ...]) -> int:
    total = 0
    llen = len(lam)
    for mu in _coarsening_tuples(lam):
        b = counts.get(mu, 0)
        if not b:
            continue
        w = weight_sum(lam, mu)
        total += -b * w if (llen - len(mu)) % 2 else b * w
    return total


def e_coefficient(t: Tree, lam, table: Optional[BTable] = None) -> int:
    """The coefficient of e_lam in X_T, via the coarsening sum."""
    key = lam if isinstance(lam, Partition) else Partition(lam)
    if key.n != t.n:
        raise ValueError(f"{key} is not a partition of {t.n}")
    bt = table if table is not None else b_table(t)
    return _e_coefficient_from_counts(bt.counts, tuple(key))


def e_expansion(t: Tree, table: Optional[BTable] = None) -> EposReport:
    """All e-coefficients of X_T plus the derived positivity report.

    `first_negative` refers to decreasing lexicographic order on the index
    partitions.
    """
    bt = table if table is not None else b_table(t)
    coeffs: dict[Partition, int] = {}
    first_negative: Optional[tuple[Partition, int]] = None
    for lam_t in _partition_tuples(t.n):
        c = _e_coefficient_from_counts(bt.counts, lam_t)
        lam = Partition(lam_t)
        coeffs[lam] = c
        if c < 0 and first_negative is None:
            first_negative = (lam, c)
    return EposReport(
        e_positive=first_negative is None,
        coefficients=coeffs,
        first_negative=first_negative,
        missing_types=bt.missing_types(),
    )


def sink_counts(t: Tree, table: Optional[BTable] = None) -> SinkTable:
    """sink(T, j) for every j, from the e-expansion grouped by length."""
    report = e_expansion(t, table)
    sinks: dict[int, int] = {}
    for lam, c in report.coefficients.items():
        j = len(lam)
        sinks[j] = sinks.get(j, 0) + c
    return SinkTable(t.n, {j: v for j, v in sinks.items() if v})


def sink_counts_bruteforce(t: Tree) -> SinkTable:
    """Oracle: enumerate all 2^(n-1) orientations and count the sinks of each."""
    n = t.n
    if n > BRUTE_FORCE_ORIENTATION_LIMIT:
        raise ValueError(
            f"brute force enumerates 2^(n-1) orientations; refusing n={n} > "
            f"{BRUTE_FORCE_ORIENTATION_LIMIT}"
        )
    edge_list = t.edges()
    m = len(edge_list)
    sinks: dict[int, int] = {}
    for mask in range(1 << m):
        has_out = [False] * n
        for i, (u, v) in enumerate(edge_list):
            if mask >> i & 1:
                has_out[u] = True
            else:
                has_out[v] = True
        j = has_out.count(False)
        sinks[j] = sinks.get(j, 0) + 1
    return SinkTable(n, sinks)


def _check_stk_preconditions(t: Tree, s: int, t_param: int, k: int) -> None:
    if s < 2 or t_param < 2:
        raise ValueError("s and t must both be at least 2")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if t.n != s + k * t_param:
        raise ValueError(f"tree has {t.n} vertices, but s + k*t = {s + k * t_param}")
    if gcd(s, t_param) == 1:
        return
    # non-coprime relaxations with the same brick placement argument
    if s > k * t_param:
        return
    if t_param % s == 0 and t_param // s >= 2:
        return
    raise ValueError(
        f"s={s}, t={t_param} must be coprime (or satisfy s > k*t or t a multiple of s)"
    )


def coefficient_stk(t: Tree, s: int, t_param: int, k: int, table: Optional[BTable] = None) -> int:
    """[e_(s, t^k)] X_T via the special-shape formula.

    Equals ``e_coefficient(t, (s,) + (t,)*k)`` but only touches b-values of
    partitions of the form (s + i*t, t*lam):

        sum over i = 0..k, lam a partition of k-i, of
        (-1)^(k - len(lam)) * t^len(lam) * (s + i*t) * b_(s+i*t, t*lam)
    """
    _check_stk_preconditions(t, s, t_param, k)
    bt = table if table is not None else b_table(t)
    total = 0
    for i in range(k + 1):
        big = s + i * t_param
        for lam in _partition_tuples(k - i):
            key = tuple(sorted((big,) + tuple(t_param * x for x in lam), reverse=True))
            b = bt.counts.get(key, 0)
            if not b:
                continue
            term = (t_param ** len(lam)) * big * b
            total += -term if (k - len(lam)) % 2 else term
    return total


def reduced_stk_sum(t: Tree, s: int, t_param: int, k: int, table: Optional[BTable] = None) -> int:
    """The reduced alternating sum whose negativity certifies non-e-positivity:

        sum over lam a partition of k of
        (-1)^(k - len(lam)) * t^len(lam) * b_(s, t*lam).

    A negative value implies a negative e-coefficient at (s, t^k) or at
    (s+t, t^(k-1)), so the tree is not e-positive.
    """
    _check_stk_preconditions(t, s, t_param, k)
    bt = table if table is not None else b_table(t)
    total = 0
    for lam in _partition_tuples(k):
        key = tuple(sorted((s,) + tuple(t_param * x for x in lam), reverse=True))
        b = bt.counts.get(key, 0)
        if not b:
            continue
        term = (t_param ** len(lam)) * b
        total += -term if (k - len(lam)) % 2 else term
    return total
