"""Reference trees T1-T4.

These are the four maximum-degree-4 non-spider trees on at most 21
vertices that admit a connected partition of every type; the exhaustive
scan recovers exactly them at 17 and 19 vertices.  Each is a long spine
with a few attachments (T4 carries a pendant path of length 3 instead of
a third leaf, so it is the one non-caterpillar of the family).
"""

from __future__ import annotations

from .tree import Tree, from_edges

FIXTURE_NAMES = ("T1", "T2", "T3", "T4")


def _spine_with_attachments(spine_len: int, attachments: list[tuple[int, int]]) -> Tree:
    """A path on `spine_len` vertices with pendant paths attached.

    Each attachment (i, k) hangs a path of k extra vertices off spine
    vertex i (0-indexed).
    """
    edges = [(i, i + 1) for i in range(spine_len - 1)]
    nxt = spine_len
    for idx, plen in attachments:
        prev = idx
        for _ in range(plen):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return from_edges(nxt, edges)


def fixture_tree(name: str) -> Tree:
    """Build one of the reference trees by name (T1, T2, T3, T4)."""
    key = name.upper()
    if key == "T1":
        # 14-vertex spine, two leaves on spine vertex 7, one leaf on 12 (1-indexed)
        return _spine_with_attachments(14, [(6, 1), (6, 1), (11, 1)])
    if key == "T2":
        # 14-vertex spine, two leaves on spine vertex 7, one leaf on 10
        return _spine_with_attachments(14, [(6, 1), (6, 1), (9, 1)])
    if key == "T3":
        # 16-vertex spine, one leaf on spine vertex 7, two leaves on 12
        return _spine_with_attachments(16, [(6, 1), (11, 1), (11, 1)])
    if key == "T4":
        # 14-vertex spine, pendant path of length 3 on spine vertex 7,
        # two leaves on 10
        return _spine_with_attachments(14, [(6, 3), (9, 1), (9, 1)])
    raise ValueError(f"unknown fixture {name!r}; choose one of {', '.join(FIXTURE_NAMES)}")


def all_fixtures() -> dict[str, Tree]:
    return {name: fixture_tree(name) for name in FIXTURE_NAMES}
