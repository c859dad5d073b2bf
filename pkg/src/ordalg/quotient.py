"""From a reflexive transitive structure ``(M <=)`` to its classification,
its strict order, and the order between classes."""

from __future__ import annotations

from dataclasses import dataclass

from .bits import iter_bits
from .errors import InvariantError, NotAPreorderError, NotTransitiveError
from .poset import Poset
from .relation import RelationStructure


class Preorder(RelationStructure):
    """A reflexive, transitively closed structure.

    A structure with some loops missing can be accepted with
    ``reflexivize=True``: every loop is added first and ``reflexivized``
    records whether that changed anything.
    """

    reflexivized: bool = False

    @classmethod
    def of(cls, s: RelationStructure, reflexivize: bool = False) -> "Preorder":
        rows = list(s.rows)
        added = False
        for i in range(len(rows)):
            if not rows[i] >> i & 1:
                if not reflexivize:
                    raise NotAPreorderError(f"element {s.elements[i]!r} is not reflexive")
                rows[i] |= 1 << i
                added = True
        p = cls.from_rows(s.elements, rows)
        w = p.transitivity_witness()
        if w is not None:
            raise NotTransitiveError(w)
        p.reflexivized = added
        return p


@dataclass(frozen=True)
class QuotientResult:
    classes: tuple[frozenset[str], ...]
    class_order: Poset  # over class representatives
    projection: dict[str, str]
    reflexivized: bool = False


def _class_masks(p: RelationStructure) -> list[int]:
    seen = 0
    out = []
    for i in range(len(p)):
        if seen >> i & 1:
            continue
        cls = p.rows[i] & p.cols[i] | 1 << i
        out.append(cls)
        seen |= cls
    return out


def quotient(p: Preorder) -> QuotientResult:
    """Classes of mutually related elements, each named by its least member.

    >>> q = quotient(Preorder.of(RelationStructure("abc", [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")]), True))
    >>> [sorted(c) for c in q.classes], q.class_order.sorted_pairs()
    ([['a', 'b'], ['c']], [('a', 'c')])
    """
    masks = _class_masks(p)
    reps = [(m & -m).bit_length() - 1 for m in masks]
    projection = {}
    for m, r in zip(masks, reps):
        for i in iter_bits(m):
            projection[p.elements[i]] = p.elements[r]
    pairs = []
    for m1, r1 in zip(masks, reps):
        for m2, r2 in zip(masks, reps):
            if m1 == m2:
                continue
            crosses = {bool(p.rows[i] & m2) for i in iter_bits(m1)}
            # a cross pair either holds for every member or for none
            if len(crosses) != 1:
                raise InvariantError("class order depends on the chosen representatives")
            if crosses.pop():
                pairs.append((p.elements[r1], p.elements[r2]))
    order = Poset(sorted(p.elements[r] for r in reps), pairs)
    return QuotientResult(tuple(p.names(m) for m in masks), order, projection, p.reflexivized)


def strict_part(p: Preorder) -> Poset:
    """Pairs ``(a, b)`` with ``a <= b`` but not ``b <= a``."""
    rows = [p.rows[i] & ~p.cols[i] for i in range(len(p))]
    out = Poset.from_rows(p.elements, rows)
    out.validate()
    return out
