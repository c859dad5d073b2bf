"""Exhaustive and random generation of small orders and transitive structures."""

from __future__ import annotations

import random
import string
from functools import lru_cache
from itertools import combinations, product

from .bits import close_rows
from .poset import Poset
from .relation import RelationStructure


def default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"e{i}" for i in range(n))


@lru_cache(maxsize=None)
def _labeled_rows(n: int) -> tuple[tuple[int, ...], ...]:
    pairs = list(combinations(range(n), 2))
    out = []
    # each unordered pair is unrelated, or ordered one way or the other
    for choice in product((0, 1, 2), repeat=len(pairs)):
        rows = [0] * n
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rows[i] |= 1 << j
            elif c == 2:
                rows[j] |= 1 << i
        if all(_successors_closed(rows, i) for i in range(n)):
            out.append(tuple(rows))
    return tuple(out)


def _successors_closed(rows: list[int], i: int) -> bool:
    row = rows[i]
    acc = 0
    m = row
    while m:
        low = m & -m
        acc |= rows[low.bit_length() - 1]
        m ^= low
    return acc & ~row == 0


def labeled_posets(n: int, names: tuple[str, ...] | None = None) -> list[Poset]:
    """Every order on ``n`` labeled elements (1, 1, 3, 19, 219, 4231 for n = 0..5)."""
    els = default_names(n) if names is None else tuple(sorted(names))
    return [Poset.from_rows(els, rows) for rows in _labeled_rows(n)]


def random_poset(rng: random.Random, n: int, density: float = 0.3) -> Poset:
    """Random order: relate earlier to later elements of a shuffled list, then close."""
    els = default_names(n)
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if rng.random() < density:
                rows[perm[x]] |= 1 << perm[y]
    return Poset.from_rows(els, close_rows(rows))


def random_structure(rng: random.Random, n: int, density: float = 0.2) -> RelationStructure:
    els = default_names(n)
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                rows[i] |= 1 << j
    return RelationStructure.from_rows(els, rows)


def random_closed_structure(rng: random.Random, n: int, density: float = 0.2) -> RelationStructure:
    """Random relation (loops allowed) closed under transitivity."""
    s = random_structure(rng, n, density)
    return RelationStructure.from_rows(s.elements, close_rows(list(s.rows)))


def random_subset(rng: random.Random, elements: tuple[str, ...], p: float = 0.4) -> frozenset[str]:
    return frozenset(x for x in elements if rng.random() < p)
