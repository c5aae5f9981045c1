"""Brick tabloids and the two statistics that drive basis transitions.

A brick tabloid of shape mu and content lam tiles each row of mu's Young
diagram with "bricks" (runs of consecutive boxes) whose lengths, collected
over all rows, form the multiset of lam's parts.  Two statistics matter
here: the weight w(B) (sum over tabloids of the product of each row's last
brick length) and the ordered count OB (bricks carry distinct labels that
must decrease along each row, which makes the within-row order of a chosen
brick set unique).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Iterable

from .partition import Partition, _as_desc_tuple


@dataclass(frozen=True)
class BrickTabloid:
    """One tiling: ``rows[i]`` lists brick lengths filling shape's i-th part."""

    content: Partition
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    @property
    def weight(self) -> int:
        """Product of the last brick length of each row."""
        return prod(row[-1] for row in self.rows)


def _check_totals(content: tuple[int, ...], shape: tuple[int, ...]) -> None:
    if sum(content) != sum(shape):
        raise ValueError(
            f"content {format_tuple(content)} and shape {format_tuple(shape)} "
            f"have different totals ({sum(content)} vs {sum(shape)})"
        )


def format_tuple(t: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _distinct_lengths(content: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(set(content), reverse=True))


def _counts_vector(content: tuple[int, ...], lengths: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(content.count(l) for l in lengths)


def enumerate_brick_tabloids(content: Iterable[int], shape: Iterable[int]) -> list[BrickTabloid]:
    """All brick tabloids with the given content and shape, each exactly once.

    Two tabloids are equal iff their per-row brick-length sequences are
    equal.  The result is empty iff content does not refine shape.
    """
    ct = _as_desc_tuple(content)
    st = _as_desc_tuple(shape)
    _check_totals(ct, st)
    lengths = _distinct_lengths(ct)
    out: list[BrickTabloid] = []
    rows_acc: list[tuple[int, ...]] = []

    def fill_row(row_idx: int, remaining: int, row_acc: tuple[int, ...], counts: tuple[int, ...]) -> None:
        if remaining == 0:
            rows_acc.append(row_acc)
            next_row(row_idx + 1, counts)
            rows_acc.pop()
            return
        for i, l in enumerate(lengths):
            if counts[i] > 0 and l <= remaining:
                nc = counts[:i] + (counts[i] - 1,) + counts[i + 1:]
                fill_row(row_idx, remaining - l, row_acc + (l,), nc)

    def next_row(row_idx: int, counts: tuple[int, ...]) -> None:
        if row_idx == len(st):
            out.append(BrickTabloid(Partition(ct), Partition(st), tuple(rows_acc)))
            return
        fill_row(row_idx, st[row_idx], (), counts)

    next_row(0, _counts_vector(ct, lengths))
    return out


def weight_sum(content: Iterable[int], shape: Iterable[int]) -> int:
    """w(B): sum over all brick tabloids of the product of last brick lengths.

    Zero when content does not refine shape.  Computed by a memoized
    row-by-row convolution over the remaining brick multiset; the
    enumeration-based :func:`weight_sum_by_enumeration` is the slow twin.
    """
    ct = _as_desc_tuple(content)
    st = _as_desc_tuple(shape)
    _check_totals(ct, st)
    return _weight_sum_cached(ct, st)


@lru_cache(maxsize=None)
def _weight_sum_cached(content: tuple[int, ...], shape: tuple[int, ...]) -> int:
    lengths = _distinct_lengths(content)

    @lru_cache(maxsize=None)
    def rec(row_idx: int, remaining: int, counts: tuple[int, ...]) -> int:
        if remaining == 0:
            if row_idx + 1 == len(shape) or len(shape) == 0:
                return 1
            return rec(row_idx + 1, shape[row_idx + 1], counts)
        total = 0
        for i, l in enumerate(lengths):
            if counts[i] > 0 and l <= remaining:
                nc = counts[:i] + (counts[i] - 1,) + counts[i + 1:]
                if l == remaining:
                    # this brick ends the row: contribute its length
                    total += l * rec(row_idx, 0, nc)
                else:
                    total += rec(row_idx, remaining - l, nc)
        return total

    if not shape:
        return 1
    return rec(0, shape[0], _counts_vector(content, lengths))


def weight_sum_by_enumeration(content: Iterable[int], shape: Iterable[int]) -> int:
    """w(B) by full enumeration of tabloids; oracle for :func:`weight_sum`."""
    return sum(t.weight for t in enumerate_brick_tabloids(content, shape))


def ordered_count(content: Iterable[int], shape: Iterable[int]) -> int:
    """OB: the number of ordered brick tabloids of the given content and shape.

    Bricks are labelled 1..len(content) (brick i has length content[i]); an
    ordered tabloid assigns each labelled brick to a row so that the lengths
    in every row sum to the row's length.  Labels must decrease along a row,
    which fixes the within-row order, so this is a count of assignments.
    Bricks of equal length are distinguishable through their labels.
    """
    ct = _as_desc_tuple(content)
    st = _as_desc_tuple(shape)
    _check_totals(ct, st)
    return _ordered_count_cached(ct, st)


@lru_cache(maxsize=None)
def _ordered_count_cached(content: tuple[int, ...], shape: tuple[int, ...]) -> int:
    lengths = _distinct_lengths(content)

    @lru_cache(maxsize=None)
    def sub_multiset_ways(remaining: int, idx: int, counts: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]]:
        """Ways to pick bricks summing to `remaining` from lengths[idx:].

        Returns (number of labelled choices, counts left) per distinct
        sub-multiset; the labelled factor is a product of binomials.
        """
        if remaining == 0:
            return [(1, counts)]
        if idx == len(lengths):
            return []
        out: list[tuple[int, tuple[int, ...]]] = []
        l = lengths[idx]
        max_use = min(counts[idx], remaining // l) if l > 0 else 0
        for use in range(max_use + 1):
            if use * l > remaining:
                break
            factor = comb(counts[idx], use)
            nc = counts[:idx] + (counts[idx] - use,) + counts[idx + 1:]
            for f2, left in sub_multiset_ways(remaining - use * l, idx + 1, nc):
                out.append((factor * f2, left))
        return out

    @lru_cache(maxsize=None)
    def rec(row_idx: int, counts: tuple[int, ...]) -> int:
        if row_idx == len(shape):
            return 1 if all(c == 0 for c in counts) else 0
        total = 0
        for factor, left in sub_multiset_ways(shape[row_idx], 0, counts):
            total += factor * rec(row_idx + 1, left)
        return total

    return rec(0, _counts_vector(content, lengths))
