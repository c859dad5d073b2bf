"""Strict partial orders and the majorant/minorant calculus on their subsets.

Conventions used throughout the package:

* ``upper(A)`` is the set of *strict* common upper bounds of ``A``;
  ``upper(())`` is the whole universe (empty intersection), and dually for
  ``lower``.
* ``down(A)``/``up(A)`` are the initial/final closures: ``A`` together with
  everything below/above some member.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .bits import close_rows, intersect_rows, iter_bits, union_rows
from .errors import CycleError, InvariantError, NotAnOrderError, NotTransitiveError
from .relation import RelationStructure


class Poset(RelationStructure):
    """An irreflexive, transitively closed structure ``(M <)``.

    >>> p = Poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    >>> p.less("a", "c")
    True
    >>> Poset("a", [("a", "a")])
    Traceback (most recent call last):
    ...
    ordalg.errors.NotAnOrderError: reflexive element 'a': not irreflexive
    """

    def __init__(self, universe: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> None:
        super().__init__(universe, pairs)
        self.validate()

    def validate(self) -> None:
        refl = self.reflexive_mask()
        if refl:
            name = self.elements[(refl & -refl).bit_length() - 1]
            raise NotAnOrderError(f"reflexive element {name!r}: not irreflexive")
        w = self.transitivity_witness()
        if w is not None:
            raise NotTransitiveError(w)

    @classmethod
    def generated(cls, universe: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> "Poset":
        """Transitively close ``pairs`` and return the order, or raise CycleError."""
        s = RelationStructure(universe, pairs)
        return cls.from_structure(s, close=True)

    @classmethod
    def from_structure(cls, s: RelationStructure, close: bool = False) -> "Poset":
        rows = close_rows(list(s.rows)) if close else list(s.rows)
        refl = [i for i, row in enumerate(rows) if row >> i & 1]
        if refl and close:
            from .deduction import find_cycle

            raise CycleError(find_cycle(s) or [s.elements[refl[0]]] * 2)
        p = cls.from_rows(s.elements, rows)
        p.validate()
        return p

    @classmethod
    def chain(cls, names: Sequence[str]) -> "Poset":
        return cls.from_rows(*_sorted_rows(names, [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]))

    @classmethod
    def antichain(cls, names: Iterable[str]) -> "Poset":
        return cls(names)

    # ---- bit-level helpers -----------------------------------------

    @property
    def up_rows(self) -> tuple[int, ...]:
        return self.rows

    @property
    def down_rows(self) -> tuple[int, ...]:
        return self.cols

    def less(self, a: str, b: str) -> bool:
        return self.has(a, b)

    def comparable(self, i: int, j: int) -> bool:
        return bool((self.rows[i] | self.cols[i]) >> j & 1)

    def upper_mask(self, m: int) -> int:
        return intersect_rows(self.rows, m, self.full_mask)

    def lower_mask(self, m: int) -> int:
        return intersect_rows(self.cols, m, self.full_mask)

    def down_mask(self, m: int) -> int:
        return m | union_rows(self.cols, m)

    def up_mask(self, m: int) -> int:
        return m | union_rows(self.rows, m)

    def is_down_mask(self, m: int) -> bool:
        return union_rows(self.cols, m) & ~m == 0

    def is_up_mask(self, m: int) -> bool:
        return union_rows(self.rows, m) & ~m == 0

    def is_chain_mask(self, m: int) -> bool:
        for i in iter_bits(m):
            if (m & ~(1 << i)) & ~(self.rows[i] | self.cols[i]):
                return False
        return True

    def is_antichain_mask(self, m: int) -> bool:
        return all(not (self.rows[i] & m) for i in iter_bits(m))

    def all_below(self, a: int, b: int) -> bool:
        """Pointwise ``a < b`` for masks: every member of ``a`` precedes every member of ``b``."""
        for i in iter_bits(a):
            if b & ~self.rows[i]:
                return False
        return True

    def induced_mask(self, mask: int) -> "Poset":
        base = RelationStructure.induced_mask(self, mask)
        return Poset.from_rows(base.elements, base.rows)

    def induced(self, names: Iterable[str]) -> "Poset":
        return self.induced_mask(self.mask(names))

    def rename(self, mapping) -> "Poset":
        base = RelationStructure.rename(self, mapping)
        return Poset.from_rows(base.elements, base.rows)

    @cached_property
    def cover_rows(self) -> tuple[int, ...]:
        """Covering relation: a -< b iff a < b with nothing strictly between."""
        out = []
        for row in self.rows:
            between = union_rows(self.rows, row)
            out.append(row & ~between)
        return tuple(out)

    def covers(self) -> list[tuple[str, str]]:
        els = self.elements
        return [(els[i], els[j]) for i, row in enumerate(self.cover_rows) for j in iter_bits(row)]

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """A topological order of indices; ties broken by canonical (name) order."""
        n = len(self)
        placed = 0
        order = []
        while len(order) < n:
            for i in range(n):
                if not placed >> i & 1 and self.cols[i] & ~placed == 0:
                    order.append(i)
                    placed |= 1 << i
                    break
        return tuple(order)

    def linear_extension_names(self) -> list[str]:
        return [self.elements[i] for i in self.linear_extension]


def _sorted_rows(names: Iterable[str], pairs: Iterable[tuple[str, str]]):
    s = RelationStructure(names, pairs)
    return s.elements, s.rows


# ---- extremes and products -------------------------------------------


@dataclass(frozen=True)
class Extremes:
    maxima: frozenset[str]
    minima: frozenset[str]
    supremum: str | None
    infimum: str | None


def extremes(p: Poset) -> Extremes:
    n = len(p)
    maxima = p.names(sum(1 << i for i in range(n) if not p.rows[i]))
    minima = p.names(sum(1 << i for i in range(n) if not p.cols[i]))
    sup = inf = None
    for i in range(n):
        others = p.full_mask & ~(1 << i)
        if p.cols[i] == others:
            sup = p.elements[i]
        if p.rows[i] == others:
            inf = p.elements[i]
    return Extremes(maxima, minima, sup, inf)


def lex_product(p: Poset, q: Poset, sep: str = "__") -> Poset:
    """Lexicographic product: (m, n) < (m', n') iff m < m', or m = m' and n < n'.

    Elements are named ``m{sep}n``.
    """
    names = {(a, b): f"{a}{sep}{b}" for a, b in product(p.elements, q.elements)}
    if len(set(names.values())) != len(names):
        raise InvariantError(f"product element names collide with separator {sep!r}")
    pairs = []
    for (a, b), (c, d) in product(names, names):
        if p.has(a, c) or (a == c and q.has(b, d)):
            pairs.append((names[a, b], names[c, d]))
    return Poset.from_rows(*_sorted_rows(names.values(), pairs))


# ---- majorants, minorants, closures ----------------------------------


def bounds(p: Poset, subset: Iterable[str], side: str) -> frozenset[str]:
    """Strict common upper (``side='upper'``) or lower bounds; the universe for an empty set."""
    m = p.mask(subset)
    if side == "upper":
        return p.names(p.upper_mask(m))
    if side == "lower":
        return p.names(p.lower_mask(m))
    raise ValueError(f"side must be 'upper' or 'lower', not {side!r}")


def closure(p: Poset, subset: Iterable[str], side: str) -> frozenset[str]:
    """Initial (down) or final (up) closure; ``side='segment'`` gives their intersection."""
    m = p.mask(subset)
    if side == "initial":
        return p.names(p.down_mask(m))
    if side == "final":
        return p.names(p.up_mask(m))
    if side == "segment":
        return p.names(p.down_mask(m) & p.up_mask(m))
    raise ValueError(f"side must be 'initial', 'final' or 'segment', not {side!r}")


@dataclass(frozen=True)
class SectionFlags:
    is_initial: bool
    is_final: bool
    is_interval: bool


def is_interval_mask(p: Poset, m: int) -> bool:
    # an antichain is an interval too; the betweenness test covers that case vacuously
    for i in iter_bits(m):
        for j in iter_bits(p.rows[i] & m):
            between = p.rows[i] & p.cols[j]
            if between & ~m:
                return False
    return True


def section_predicates(p: Poset, subset: Iterable[str]) -> SectionFlags:
    m = p.mask(subset)
    return SectionFlags(p.is_down_mask(m), p.is_up_mask(m), is_interval_mask(p, m))


def is_ramified(p: Poset) -> bool:
    """True iff the down-set of every element is totally ordered."""
    return all(p.is_chain_mask(p.down_mask(1 << i)) for i in range(len(p)))


def cofinal(p: Poset, a: Iterable[str], b: Iterable[str], side: str = "final") -> bool:
    """Cofinality (equal initial closures) or, with ``side='initial'``, coinitiality.

    The closure test is cross-checked against the elementwise criterion:
    every a lies at or below some b and vice versa (at or above for
    coinitiality).
    """
    ma, mb = p.mask(a), p.mask(b)
    if side == "final":
        by_closure = p.down_mask(ma) == p.down_mask(mb)
        beyond = p.rows  # x <= some member of m: x in m, or m meets the successors of x
    elif side == "initial":
        by_closure = p.up_mask(ma) == p.up_mask(mb)
        beyond = p.cols
    else:
        raise ValueError(f"side must be 'final' or 'initial', not {side!r}")

    def dominated(x: int, m: int) -> bool:
        return bool(m >> x & 1) or bool(beyond[x] & m)

    by_elements = all(dominated(x, mb) for x in iter_bits(ma)) and all(dominated(x, ma) for x in iter_bits(mb))
    if by_closure != by_elements:
        raise InvariantError("cofinality tests disagree")
    return by_closure


@dataclass(frozen=True)
class SubsetRelations:
    finally_superior: bool
    same_majorant: bool
    envelops_superiorly: bool


def subset_relations(p: Poset, a: Iterable[str], b: Iterable[str]) -> SubsetRelations:
    """Compare two subsets: A <1 B, A =1 B (same majorant) and A <=3 B (B meets the up-closure of each a)."""
    ma, mb = p.mask(a), p.mask(b)
    up_a = p.upper_mask(ma)
    envelops = all(p.up_mask(1 << i) & mb for i in iter_bits(ma))
    return SubsetRelations(bool(mb & up_a), up_a == p.upper_mask(mb), envelops)
