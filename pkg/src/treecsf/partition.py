"""Integer partitions: enumeration, refinement, coarsening, and the z statistic."""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator


class Partition(tuple):
    """An integer partition: a weakly decreasing tuple of positive integers.

    Parts are sorted on construction, so ``Partition((2, 3))`` equals
    ``Partition((3, 2))``.  Instances hash and compare like plain tuples,
    which keeps them interchangeable with raw tuples as dict keys.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        ps = sorted(parts, reverse=True)
        for p in ps:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise ValueError(f"partition parts must be positive integers, got {p!r}")
        return super().__new__(cls, ps)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)


def format_partition(lam: Iterable[int]) -> str:
    """Render a partition as comma-separated parts in brackets, e.g. "[4,2]"."""
    return "[" + ",".join(str(p) for p in lam) + "]"


def parse_partition(text: str) -> Partition:
    """Parse a partition from text.

    Accepts bracketed part lists like "[4,2]" or "(4,2)", bare lists like
    "4,2", and exponent shorthand items like "3,2^7" (seven parts equal
    to 2).  Whitespace is ignored.
    """
    s = text.strip()
    if s and s[0] in "([" and s[-1] in ")]":
        s = s[1:-1]
    s = s.replace(" ", "")
    if not s:
        return Partition(())
    parts: list[int] = []
    for item in s.split(","):
        if not item:
            raise ValueError(f"empty item in partition {text!r}")
        if "^" in item:
            base_s, _, exp_s = item.partition("^")
            base, exp = int(base_s), int(exp_s)
            if exp < 0:
                raise ValueError(f"negative exponent in partition {text!r}")
            parts.extend([base] * exp)
        else:
            parts.append(int(item))
    return Partition(parts)


@lru_cache(maxsize=None)
def _partition_tuples(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n as plain tuples, in decreasing lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rem: int, maxp: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, maxp), 0, -1):
            for rest in gen(rem - p, p):
                yield (p,) + rest

    return tuple(gen(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, each exactly once, in decreasing lexicographic order."""
    return [Partition(t) for t in _partition_tuples(n)]


def partition_count(n: int) -> int:
    """Number of partitions of n via the pentagonal-number recurrence.

    Independent of :func:`enumerate_partitions`; used as a counting oracle.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = 1 if k % 2 == 1 else -1
            if g1 <= m:
                total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def _as_desc_tuple(lam: Iterable[int]) -> tuple[int, ...]:
    t = tuple(lam)
    if any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        t = tuple(sorted(t, reverse=True))
    return t


@lru_cache(maxsize=None)
def _sub_multisets_summing(parts: tuple[int, ...], target: int) -> tuple[tuple[int, ...], ...]:
    """Distinct sub-multisets of `parts` (sorted desc) summing to `target`."""
    if target == 0:
        return ((),)
    if not parts or target < 0:
        return ()
    out = []
    tried = set()
    for i, p in enumerate(parts):
        if p in tried:
            continue
        tried.add(p)
        if p > target:
            continue
        for tail in _sub_multisets_summing(parts[i + 1:], target - p):
            out.append((p,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def _can_group(parts: tuple[int, ...], targets: tuple[int, ...]) -> bool:
    """Backtracking check: can the multiset `parts` be split into blocks
    whose sums are exactly the entries of `targets`?  Both sorted desc."""
    if not targets:
        return not parts
    if len(parts) < len(targets) or (parts and parts[0] > targets[0]):
        return False
    target, rest_targets = targets[0], targets[1:]
    for chosen in _sub_multisets_summing(parts, target):
        remaining = _multiset_minus(parts, chosen)
        if _can_group(remaining, rest_targets):
            return True
    return False


def _multiset_minus(parts: tuple[int, ...], chosen: tuple[int, ...]) -> tuple[int, ...]:
    left = list(parts)
    for c in chosen:
        left.remove(c)
    return tuple(left)


def refines(lam: Iterable[int], mu: Iterable[int]) -> bool:
    """True iff `lam` refines `mu`: lam's parts can be grouped into blocks
    whose sums are exactly mu's parts (in particular the totals agree)."""
    lt, mt = _as_desc_tuple(lam), _as_desc_tuple(mu)
    if sum(lt) != sum(mt):
        return False
    return _can_group(lt, mt)


@lru_cache(maxsize=None)
def _coarsening_tuples(lam: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Closure of `lam` under merging two parts, i.e. all mu with lam refining mu.

    Breadth-first merge closure; visits each distinct coarsening once.
    """
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(len(p)):
                for j in range(i + 1, len(p)):
                    q = list(p)
                    a = q.pop(j)
                    q[i] += a
                    qt = tuple(sorted(q, reverse=True))
                    if qt not in seen:
                        seen.add(qt)
                        nxt.append(qt)
        frontier = nxt
    return tuple(sorted(seen, reverse=True))


def coarsenings(lam: Iterable[int]) -> list[Partition]:
    """All distinct mu such that `lam` refines mu, in decreasing lex order.

    Always contains `lam` itself and the one-part partition.
    """
    return [Partition(t) for t in _coarsening_tuples(_as_desc_tuple(lam))]


@lru_cache(maxsize=None)
def _refinement_tuples(mu: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = sum(mu)
    return tuple(t for t in _partition_tuples(n) if _can_group(t, mu))


def refinements(mu: Iterable[int]) -> list[Partition]:
    """All distinct lam refining `mu`, in decreasing lex order."""
    return [Partition(t) for t in _refinement_tuples(_as_desc_tuple(mu))]


def z_value(lam: Iterable[int]) -> int:
    """The permutation-cycle-type statistic: product over distinct part
    sizes k of k**r_k * r_k! where r_k is the multiplicity of k."""
    mult: dict[int, int] = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    out = 1
    for k, r in mult.items():
        out *= k ** r * factorial(r)
    return out
