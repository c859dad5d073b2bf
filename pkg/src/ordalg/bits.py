"""Small helpers for subsets encoded as Python ints (bit i = element i)."""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def full(n: int) -> int:
    return (1 << n) - 1


def union_rows(rows: tuple[int, ...] | list[int], mask: int) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= rows[i]
    return out


def intersect_rows(rows: tuple[int, ...] | list[int], mask: int, universe: int) -> int:
    """Intersection of ``rows[i]`` over ``i`` in ``mask``; ``universe`` when mask is empty."""
    out = universe
    for i in iter_bits(mask):
        out &= rows[i]
        if not out:
            break
    return out


def subset_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical subset order: cardinality first, then lexicographic on indices."""
    return (mask.bit_count(), tuple(iter_bits(mask)))


def close_rows(rows: list[int]) -> list[int]:
    """Transitive closure of a bit-row relation (Warshall, in place on a copy)."""
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return rows


def transpose(rows: tuple[int, ...] | list[int]) -> list[int]:
    out = [0] * len(rows)
    for i, row in enumerate(rows):
        bit = 1 << i
        for j in iter_bits(row):
            out[j] |= bit
    return out
