"""Trees on vertices 0..n-1: constructors, canonical codes, pendent
subtree detection, and exhaustive generation of isomorphism classes."""

from __future__ import annotations

import warnings
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple


class Tree:
    """An unrooted tree: vertex count plus sorted adjacency lists.

    Immutable after construction; build through :func:`from_edges` or the
    shape constructors.  Vertex labels carry no meaning for any of the
    mathematics, they only index storage.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...]):
        self.n = n
        self.adj = adj

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Tree:
    """Validated construction from an edge list on vertices 0..n-1."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    edge_list = [(int(u), int(v)) for u, v in edges]
    if len(edge_list) != n - 1:
        raise ValueError(
            f"a tree on {n} vertices needs {n - 1} edges, got {len(edge_list)} "
            "(extra edges would close a cycle)"
        )
    adj: list[list[int]] = [[] for _ in range(n)]
    seen = set()
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    # n-1 distinct edges: connected iff acyclic
    reached = [False] * n
    stack = [0]
    reached[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not reached[y]:
                reached[y] = True
                count += 1
                stack.append(y)
    if count != n:
        raise ValueError("edges do not connect all vertices, so they contain a cycle")
    return Tree(n, tuple(tuple(sorted(a)) for a in adj))


def make_path(n: int) -> Tree:
    """The path on n vertices (a single vertex when n = 1)."""
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_star(k: int) -> Tree:
    """The star with k leaves attached to a center, k+1 vertices in all."""
    if k < 0:
        raise ValueError("leaf count must be nonnegative")
    return from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def make_spider(legs: Iterable[int]) -> Tree:
    """A spider: paths of the given lengths ("legs") attached to one center.

    Fewer than three legs (or legs of length 0) degenerate into a path;
    that is allowed but flagged with a warning since the result has no
    vertex of degree 3.
    """
    leg_list = [int(a) for a in legs]
    if any(a < 1 for a in leg_list):
        raise ValueError("every leg needs length at least 1")
    if len(leg_list) < 3:
        warnings.warn("a spider needs at least 3 legs; this is a path", stacklevel=2)
    edges = []
    nxt = 1
    for a in leg_list:
        prev = 0
        for _ in range(a):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return from_edges(nxt, edges)


def make_caterpillar(alpha: Iterable[int]) -> Tree:
    """The caterpillar C(alpha): a spine path of d = len(alpha) vertices
    with alpha[i] leaves attached to the i-th spine vertex.

    Requires alpha[0] >= 1 and alpha[-1] >= 1, otherwise the spine of the
    constructed tree would be shorter than claimed.
    """
    a = [int(x) for x in alpha]
    d = len(a)
    if d < 1:
        raise ValueError("caterpillar needs at least one spine vertex")
    if any(x < 0 for x in a):
        raise ValueError("leaf counts must be nonnegative")
    if a[0] < 1 or a[-1] < 1:
        raise ValueError(
            "the first and last spine vertices need at least one leaf each, "
            "otherwise the spine is not the path claimed"
        )
    edges = [(i, i + 1) for i in range(d - 1)]
    nxt = d
    for i, cnt in enumerate(a):
        for _ in range(cnt):
            edges.append((i, nxt))
            nxt += 1
    return from_edges(nxt, edges)


class DegreeStats(NamedTuple):
    max_degree: int
    leaf_count: int
    is_spider: bool
    is_caterpillar: bool
    is_path: bool


def degree_stats(t: Tree) -> DegreeStats:
    """Degree summary: max degree, number of leaves, and the three shape flags.

    A spider has exactly one vertex of degree >= 3.  A caterpillar is a tree
    whose leaf removal leaves a path (or a single vertex, or nothing).  A
    path has maximum degree <= 2.
    """
    degs = t.degrees()
    max_degree = max(degs)
    leaf_count = sum(1 for d in degs if d == 1)
    is_spider = sum(1 for d in degs if d >= 3) == 1
    core = [v for v in range(t.n) if degs[v] >= 2]
    is_caterpillar = all(
        sum(1 for w in t.adj[v] if degs[w] >= 2) <= 2 for v in core
    )
    return DegreeStats(max_degree, leaf_count, is_spider, is_caterpillar, max_degree <= 2)


def centers(t: Tree) -> list[int]:
    """The one or two middle vertices of the tree (peeling leaves inward)."""
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = t.degrees()
    layer = [v for v in range(n) if deg[v] == 1]
    removed = len(layer)
    while removed < n:
        nxt = []
        for u in layer:
            deg[u] = 0
            for w in t.adj[u]:
                if deg[w] > 0:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        removed += len(nxt)
        layer = nxt
    return sorted(layer)


def _rooted_canonical_seq(t: Tree, root: int) -> tuple[int, ...]:
    """Canonical level sequence of the tree rooted at `root` (preorder depths,
    child subtrees ordered by decreasing sequence)."""

    def rec(v: int, parent: int, depth: int) -> tuple[int, ...]:
        subs = sorted(
            (rec(w, v, depth + 1) for w in t.adj[v] if w != parent),
            reverse=True,
        )
        out = (depth,)
        for s in subs:
            out += s
        return out

    return rec(root, -1, 0)


def canonical_code(t: Tree) -> str:
    """A canonical level-sequence string: equal iff the trees are isomorphic.

    The tree is rooted at its center; for bicentral trees both rootings are
    tried and the lexicographically smaller sequence wins.
    """
    seqs = [_rooted_canonical_seq(t, c) for c in centers(t)]
    return ",".join(str(d) for d in min(seqs))


def tree_from_code(code: str) -> Tree:
    """Rebuild a tree from a canonical level-sequence string (round-trips
    with :func:`canonical_code` up to isomorphism)."""
    try:
        depths = [int(x) for x in code.strip().split(",")]
    except ValueError as exc:
        raise ValueError(f"malformed level sequence {code!r}") from exc
    if not depths or depths[0] != 0:
        raise ValueError("level sequence must start at depth 0")
    edges = []
    stack = [0]
    for v, d in enumerate(depths[1:], start=1):
        if d < 1 or d > len(stack):
            raise ValueError(f"depth {d} at position {v} breaks the sequence")
        del stack[d:]
        edges.append((stack[-1], v))
        stack.append(v)
    return from_edges(len(depths), edges)


def isomorphic(t1: Tree, t2: Tree) -> bool:
    return t1.n == t2.n and canonical_code(t1) == canonical_code(t2)


def _rooted_orientation(t: Tree, root: int = 0) -> tuple[list[int], list[int]]:
    """Parents and a preorder listing for the tree rooted at `root`."""
    parent = [-1] * t.n
    order = [root]
    parent[root] = root
    for v in order:
        for w in t.adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    parent[root] = -1
    return parent, order


def subtree_sizes(t: Tree, root: int = 0) -> tuple[list[int], list[int]]:
    """Subtree sizes for the tree rooted at `root`, plus the preorder used."""
    parent, order = _rooted_orientation(t, root)
    size = [1] * t.n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    return size, order


def _component_code(t: Tree, inside: set[int], start: int) -> str:
    """Canonical code of the component of `inside` containing `start`."""
    verts = []
    stack = [start]
    seen = {start}
    while stack:
        v = stack.pop()
        verts.append(v)
        for w in t.adj[v]:
            if w in inside and w not in seen:
                seen.add(w)
                stack.append(w)
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u in verts
        for v in t.adj[u]
        if v in seen and index[u] < index[v]
    ]
    return canonical_code(from_edges(len(verts), edges))


def pendent_count(t: Tree, pattern: Tree) -> int:
    """Number of edges whose removal leaves a component isomorphic to `pattern`.

    Each edge is counted at most once, even when both sides match.
    """
    if pattern.n >= t.n:
        raise ValueError("pattern must be smaller than the tree")
    pcode = canonical_code(pattern)
    parent, order = _rooted_orientation(t, 0)
    size = [1] * t.n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    m = pattern.n
    all_vertices = set(range(t.n))

    count = 0
    for v in range(t.n):
        if parent[v] < 0:
            continue
        below = _descendants(t, parent, v)
        hit = False
        if size[v] == m:
            hit = _component_code(t, below, v) == pcode
        if not hit and t.n - size[v] == m:
            hit = _component_code(t, all_vertices - below, parent[v]) == pcode
        count += hit
    return count


def _descendants(t: Tree, parent: list[int], v: int) -> set[int]:
    out = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if y != parent[x] and y not in out:
                out.add(y)
                stack.append(y)
    return out


@lru_cache(maxsize=None)
def rooted_tree_count(n: int) -> int:
    """Number of rooted trees on n unlabelled vertices (pure arithmetic)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0
    r = [0, 1]
    for m in range(2, n + 1):
        total = 0
        for k in range(1, m):
            s = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
            total += s * r[m - k]
        r.append(total // (m - 1))
    return r[n]


def free_tree_count(n: int) -> int:
    """Number of free trees on n unlabelled vertices.

    Derived arithmetically from the rooted counts (independent of the
    generator, so it doubles as a counting oracle for it).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        return 1
    r = [rooted_tree_count(i) for i in range(n + 1)]
    pair_sum = sum(r[i] * r[n - i] for i in range(1, n))
    correction = r[n // 2] if n % 2 == 0 else 0
    assert (pair_sum - correction) % 2 == 0
    return r[n] - (pair_sum - correction) // 2


def enumerate_free_trees(n: int, skip: int = 0) -> Iterator[Tree]:
    """Yield one representative per isomorphism class of trees on n vertices.

    The order is deterministic, so `skip` can fast-forward the stream for
    checkpoint restarts and contiguous shards can be formed by index
    arithmetic.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        trees: Iterable[Tree] = [make_path(1)]
    elif n == 2:
        trees = [make_path(2)]
    else:
        from networkx.generators.nonisomorphic_trees import nonisomorphic_trees

        def convert() -> Iterator[Tree]:
            for g in nonisomorphic_trees(n):
                yield from_edges(n, g.edges())

        trees = convert()
    for idx, t in enumerate(trees):
        if idx >= skip:
            yield t
