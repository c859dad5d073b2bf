"""Brute-force reference implementations on plain Python sets.

Nothing here imports the package: these are the independent oracles the
tests compare against.  Everything is exponential and meant for tiny inputs.
"""

from __future__ import annotations

from itertools import chain, combinations, product


def subsets(xs):
    xs = sorted(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))]


def close(pairs):
    pairs = set(pairs)
    while True:
        extra = {(a, d) for a, b in pairs for c, d in pairs if b == c} - pairs
        if not extra:
            return frozenset(pairs)
        pairs |= extra


def is_order(universe, pairs):
    pairs = set(pairs)
    if any(a == b for a, b in pairs):
        return False
    return all((a, d) in pairs for a, b in pairs for c, d in pairs if b == c)


def below(pairs, x):
    return {a for a, b in pairs if b == x}


def above(pairs, x):
    return {b for a, b in pairs if a == x}


def is_down(pairs, s):
    return all(below(pairs, x) <= s for x in s)


def is_up(pairs, s):
    return all(above(pairs, x) <= s for x in s)


def pointwise_less(pairs, a, b):
    return all((x, y) in pairs for x in a for y in b)


def gaps(universe, pairs):
    """Every (down-set, up-set) pair with A < B pointwise."""
    subs = subsets(universe)
    downs = [s for s in subs if is_down(pairs, s)]
    ups = [s for s in subs if is_up(pairs, s)]
    return [(a, b) for a in downs for b in ups if pointwise_less(pairs, a, b)]


def antichains(universe, pairs):
    out = [frozenset()]
    for s in subsets(universe):
        if s and all((x, y) not in pairs for x in s for y in s):
            out.append(s)
    return sorted(set(out), key=lambda s: (len(s), sorted(s)))


def gap_count_by_antichains(universe, pairs):
    """Gaps counted as pairs of generating antichains (X below Y pointwise).

    A gap is determined by the maximal elements X of its initial part and the
    minimal elements Y of its final part; the pointwise condition on the
    sections is the same condition on X and Y.
    """
    pairs = set(pairs)
    acs = []
    # grow antichains element by element; fine for a few dozen elements
    elems = sorted(universe)
    incomparable = {x: {y for y in elems if y != x and (x, y) not in pairs and (y, x) not in pairs} for x in elems}

    def grow(cur, cand):
        acs.append(cur)
        for i, v in enumerate(cand):
            grow(cur | {v}, [w for w in cand[i + 1:] if w in incomparable[v]])

    grow(frozenset(), elems)
    return sum(1 for x in acs for y in acs if pointwise_less(pairs, x, y))


def one_point_extensions(universe, pairs, new):
    """All orders on universe + {new} restricting to the given order."""
    out = set()
    elems = sorted(universe)
    for choice in product((0, 1, 2), repeat=len(elems)):
        ext = set(pairs)
        for x, c in zip(elems, choice):
            if c == 1:
                ext.add((x, new))
            elif c == 2:
                ext.add((new, x))
        if is_order(set(universe) | {new}, ext):
            out.add(frozenset(ext))
    return out


def maximal_chains(universe, pairs):
    chains = [s for s in subsets(universe) if all(x == y or (x, y) in pairs or (y, x) in pairs for x in s for y in s)]
    return {c for c in chains if not any(c < d for d in chains)}


def maximal_antichains(universe, pairs):
    acs = [s for s in subsets(universe) if all((x, y) not in pairs for x in s for y in s)]
    return {a for a in acs if not any(a < b for b in acs)}


def covers(pairs):
    pairs = set(pairs)
    return {(a, b) for a, b in pairs if not any((a, x) in pairs and (x, b) in pairs for _, x in pairs)}


def essential_pairs(pairs):
    """Pairs whose removal from the whole relation changes its closure."""
    full = close(pairs)
    return {p for p in full if close(full - {p}) != full}


def has_cycle(pairs):
    nodes = {x for p in pairs for x in p}
    succ = {x: {b for a, b in pairs if a == x} for x in nodes}
    state = {}

    def visit(x):
        state[x] = 1
        for y in succ[x]:
            if state.get(y) == 1 or (y not in state and visit(y)):
                return True
        state[x] = 2
        return False

    return any(x not in state and visit(x) for x in sorted(nodes))


def disjunctive_bipartitions(universe, pairs):
    return [(a, frozenset(universe) - a) for a in subsets(universe) if pointwise_less(pairs, a, frozenset(universe) - a)]


def labeled_orders(n):
    """Orders on range(n) by trying every relation (2^(n*n)); only for n <= 3."""
    cells = [(i, j) for i in range(n) for j in range(n)]
    out = []
    for bits in product((0, 1), repeat=len(cells)):
        rel = {c for c, b in zip(cells, bits) if b}
        if is_order(range(n), rel):
            out.append(frozenset(rel))
    return out
