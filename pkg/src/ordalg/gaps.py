"""Gaps (cuts) of a finite order: enumeration, taxonomy, filling, the natural
order between gaps, and the decomposition along disjunctive gaps.

A gap is a pair ``(initial, final)`` of an initial section and a final
section with every member of the first below every member of the second.
Filling a gap with a new element ``p`` puts ``initial < p < final`` and
leaves ``p`` incomparable to the rest (the gap's *neutral interval*).
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .bits import close_rows, iter_bits, subset_key, union_rows
from .errors import CapExceededError, InvalidGapError, InvariantError, NameCollisionError
from .poset import Poset, is_interval_mask
from .relation import RelationStructure

DEFAULT_GAP_CAP = 20

# above this size the filled order is certified by a transitivity check instead of a full closure
EXACT_CLOSURE_LIMIT = 300


@dataclass(frozen=True)
class Gap:
    initial: frozenset[str]
    final: frozenset[str]

    @classmethod
    def of(cls, initial: Iterable[str] = (), final: Iterable[str] = ()) -> "Gap":
        return cls(frozenset(initial), frozenset(final))

    @property
    def token(self) -> str:
        """Canonical identifier ``a,b|c``: sorted initial part, bar, sorted final part."""
        return ",".join(sorted(self.initial)) + "|" + ",".join(sorted(self.final))

    @classmethod
    def from_token(cls, token: str) -> "Gap":
        left, sep, right = token.partition("|")
        if not sep:
            raise InvalidGapError(f"gap token needs a '|': {token!r}")
        return cls.of((x for x in left.split(",") if x), (x for x in right.split(",") if x))

    def __str__(self) -> str:
        return f"({{{', '.join(sorted(self.initial))}}}, {{{', '.join(sorted(self.final))}}})"


def gap_from_masks(p: RelationStructure, a: int, b: int) -> Gap:
    return Gap(p.names(a), p.names(b))


def gap_masks(p: Poset, g: Gap) -> tuple[int, int]:
    return p.mask(g.initial), p.mask(g.final)


def is_gap_mask(p: Poset, a: int, b: int) -> bool:
    return p.is_down_mask(a) and p.is_up_mask(b) and p.all_below(a, b)


def validate_gap(p: Poset, g: Gap) -> tuple[int, int]:
    try:
        a, b = gap_masks(p, g)
    except Exception as exc:
        raise InvalidGapError(f"gap {g} mentions elements outside the order: {exc}") from None
    if not p.is_down_mask(a):
        raise InvalidGapError(f"{g}: first part is not an initial section")
    if not p.is_up_mask(b):
        raise InvalidGapError(f"{g}: second part is not a final section")
    if not p.all_below(a, b):
        raise InvalidGapError(f"{g}: first part does not lie entirely below the second")
    return a, b


# ---- enumeration -------------------------------------------------------------


def _closed_sets(order: Sequence[int], need: Sequence[int]) -> Iterator[int]:
    # an element may join once everything in need[i] has; order lists predecessors first
    n = len(order)
    stack = [(0, 0)]
    while stack:
        k, cur = stack.pop()
        while k < n and need[order[k]] & ~cur:
            k += 1
        if k == n:
            yield cur
            continue
        i = order[k]
        stack.append((k + 1, cur | 1 << i))
        stack.append((k + 1, cur))


def down_set_masks(p: Poset, within: int | None = None) -> Iterator[int]:
    """All initial sections of ``p`` inside ``within``, which must itself be an initial section.

    Walks a linear extension deciding each element in turn; an element may
    join only after all its predecessors have, so every leaf is a section.
    """
    order = [i for i in p.linear_extension if within is None or within >> i & 1]
    return _closed_sets(order, p.cols)


def up_set_masks(p: Poset, within: int | None = None) -> Iterator[int]:
    """All final sections of ``p`` inside ``within``, which must itself be a final section."""
    order = [i for i in reversed(p.linear_extension) if within is None or within >> i & 1]
    return _closed_sets(order, p.rows)


def iter_gap_masks(p: Poset) -> Iterator[tuple[int, int]]:
    """Every gap as a mask pair; the final part ranges over sections inside ``upper(initial)``."""
    for a in down_set_masks(p):
        for b in up_set_masks(p, p.upper_mask(a)):
            yield a, b


def count_gaps(p: Poset, limit: int | None = None) -> int:
    """Number of gaps; stops counting once ``limit`` is passed and returns ``limit + 1``."""
    count = 0
    for _ in iter_gap_masks(p):
        count += 1
        if limit is not None and count > limit:
            break
    return count


def gap_mask_list(p: Poset, cap: int = DEFAULT_GAP_CAP) -> list[tuple[int, int]]:
    if len(p) > cap:
        raise CapExceededError("gap enumeration universe size", cap, len(p))
    return sorted(iter_gap_masks(p), key=lambda ab: (subset_key(ab[0]), subset_key(ab[1])))


def enumerate_gaps(p: Poset, cap: int = DEFAULT_GAP_CAP) -> list[Gap]:
    """All gaps of ``p`` in canonical order (initial part first, each by size then names).

    >>> [str(g) for g in enumerate_gaps(Poset("a"))]
    ['({}, {})', '({}, {a})', '({a}, {})']
    """
    return [gap_from_masks(p, a, b) for a, b in gap_mask_list(p, cap)]


# ---- taxonomy ----------------------------------------------------------------


class GapType(enum.Enum):
    EXTERIOR = "Exterior"
    COVERED = "Covered"
    SUPPORTED = "Supported"
    INTERIOR = "Interior"


@dataclass(frozen=True)
class GapKind:
    kind: GapType
    narrow: bool
    disjunctive: bool
    initial_tight: bool  # initial part equals lower(final part)
    final_tight: bool  # final part equals upper(initial part)
    neutral: frozenset[str]


def classify_gap_masks(p: Poset, a: int, b: int) -> tuple[GapType, bool, bool, bool, bool, int]:
    if not a and not b:
        kind = GapType.EXTERIOR
    elif not a:
        kind = GapType.COVERED
    elif not b:
        kind = GapType.SUPPORTED
    else:
        kind = GapType.INTERIOR
    initial_tight = a == p.lower_mask(b)
    final_tight = b == p.upper_mask(a)
    narrow = initial_tight and final_tight
    neutral = p.full_mask & ~(a | b)
    return kind, narrow, narrow and not neutral, initial_tight, final_tight, neutral


def classify_gap(p: Poset, g: Gap) -> GapKind:
    a, b = validate_gap(p, g)
    kind, narrow, disj, it, ft, neutral = classify_gap_masks(p, a, b)
    if not is_interval_mask(p, neutral):
        raise InvariantError(f"neutral interval of {g} is not an interval")
    return GapKind(kind, narrow, disj, it, ft, p.names(neutral))


# ---- filling ----------------------------------------------------------------


def fill_gap(p: Poset, g: Gap, name: str) -> Poset:
    """One-element extension where ``name`` occupies ``g``."""
    return fill_simultaneous(p, [g], [name])


def fill_simultaneous(p: Poset, gaps: Sequence[Gap], names: Sequence[str]) -> Poset:
    """Occupy every gap with its own new element, then close transitively.

    The closure is checked to be an order, and the relations it derives
    among the new elements are checked against the natural gap order
    (``p_g < p_h`` iff the final part of ``g`` meets the initial part of ``h``).
    """
    if len(gaps) != len(names):
        raise ValueError("one name per gap")
    if len(set(names)) != len(names):
        raise NameCollisionError("new element names must be distinct")
    for nm in names:
        if nm in p.index:
            raise NameCollisionError(f"{nm!r} already belongs to the order")
    masks = [validate_gap(p, g) for g in gaps]
    return _fill_masks(p, masks, names)


def _is_transitive(rows: Sequence[int]) -> bool:
    return all(union_rows(rows, row) & ~row == 0 for row in rows)


def _fill_masks(p: Poset, masks: Sequence[tuple[int, int]], names: Sequence[str]) -> Poset:
    elements = tuple(sorted(p.elements + tuple(names)))
    pos = {nm: i for i, nm in enumerate(elements)}
    remap = [pos[nm] for nm in p.elements]
    new_idx = [pos[nm] for nm in names]

    def lift(m: int) -> int:
        out = 0
        for i in iter_bits(m):
            out |= 1 << remap[i]
        return out

    rows = [0] * len(elements)
    for i, row in enumerate(p.rows):
        rows[remap[i]] = lift(row)
    lifted = [(lift(a), lift(b)) for a, b in masks]

    # new elements placed after each old element, i.e. the gaps whose initial part holds it
    after = [0] * len(elements)
    for k, (a, _) in zip(new_idx, lifted):
        bit = 1 << k
        for i in iter_bits(a):
            after[i] |= bit
    predicted = list(rows)
    for i in remap:
        predicted[i] |= after[i]
    for k, (_, b) in zip(new_idx, lifted):
        # natural order: k < h iff final(k) meets initial(h)
        predicted[k] = b | union_rows(after, b)

    if len(elements) <= EXACT_CLOSURE_LIMIT:
        seed = list(rows)
        for i in remap:
            seed[i] |= after[i]
        for k, (_, b) in zip(new_idx, lifted):
            seed[k] = b
        closed = close_rows(seed)
        if closed != predicted:
            raise InvariantError("derived order among new elements differs from the natural gap order")
    elif not _is_transitive(predicted):
        # predicted contains the seed relations and is derivable from them,
        # so being transitive makes it exactly their closure
        raise InvariantError("natural gap order does not close the filled relations")
    if any(predicted[k] >> k & 1 for k in new_idx):
        raise InvariantError("simultaneous filling produced a reflexive element")
    rows = predicted
    return Poset.from_rows(elements, rows)


# ---- natural order on gaps -----------------------------------------------------


def gap_precedes(g: Gap, h: Gap) -> bool:
    return bool(g.final & h.initial)


def gap_order(p: Poset, cap: int = DEFAULT_GAP_CAP) -> Poset:
    """The gaps of ``p`` as an order over their tokens: g < h iff final(g) meets initial(h)."""
    masks = gap_mask_list(p, cap)
    tokens = [gap_from_masks(p, a, b).token for a, b in masks]
    pairs = []
    for (a1, b1), t1 in zip(masks, tokens):
        for (a2, b2), t2 in zip(masks, tokens):
            if b1 & a2:
                pairs.append((t1, t2))
    s = RelationStructure(tokens, pairs)
    order = Poset.from_rows(s.elements, s.rows)
    try:
        order.validate()
    except Exception as exc:
        raise InvariantError(f"natural gap order is not an order: {exc}") from None
    return order


# ---- disjunctive gaps and blocks ---------------------------------------------------


def disjunctive_gap_masks(p: Poset) -> list[tuple[int, int]]:
    """Disjunctive gaps, in increasing natural order.

    A disjunctive gap splits the universe into ``A`` below ``B`` pointwise,
    so ``A`` is a prefix of every linear extension; the prefixes of one
    linear extension are therefore the only candidates.
    """
    full = p.full_mask
    out = []
    a = 0
    candidates = [0]
    for i in p.linear_extension:
        a |= 1 << i
        candidates.append(a)
    for a in candidates:
        b = full & ~a
        if p.all_below(a, b):
            out.append((a, b))
    for (a1, b1), (a2, b2) in zip(out, out[1:]):
        if not b1 & a2:
            raise InvariantError("disjunctive gaps are not totally ordered")
    return out


def disjunctive_chain(p: Poset) -> list[Gap]:
    return [gap_from_masks(p, a, b) for a, b in disjunctive_gap_masks(p)]


def block_masks(p: Poset) -> list[int]:
    """Blocks between consecutive disjunctive gaps; an element's block is the
    intersection of the final parts containing it with the initial parts containing it."""
    chain = disjunctive_gap_masks(p)
    blocks = []
    for (a1, _), (a2, _) in zip(chain, chain[1:]):
        block = a2 & ~a1
        if block:
            blocks.append(block)
    for blk in blocks:
        inner = p.induced_mask(blk)
        if len(disjunctive_gap_masks(inner)) > 2:
            raise InvariantError("a block has a non-extreme disjunctive gap")
    for x, y in zip(blocks, blocks[1:]):
        if not p.upper_mask(x) & y:
            raise InvariantError("blocks are not ordered by <1")
    return blocks


def block_decomposition(p: Poset) -> list[frozenset[str]]:
    """Unique splitting into blocks totally ordered under <1, none with an inner disjunctive gap.

    >>> [sorted(b) for b in block_decomposition(Poset.chain("abc"))]
    [['a'], ['b'], ['c']]
    """
    return [p.names(b) for b in block_masks(p)]


def jump_gaps(p: Poset, element: str) -> tuple[Gap, Gap]:
    """The two disjunctive gaps enclosing ``element``: (union of initial parts
    of gaps having it in their final part, intersection of those final parts)
    and the mirror built from gaps having it in their initial part."""
    i = p.idx(element)
    bit = 1 << i
    chain = disjunctive_gap_masks(p)
    left_a, left_b = 0, p.full_mask
    right_a, right_b = p.full_mask, 0
    for a, b in chain:
        if b & bit:
            left_a |= a
            left_b &= b
        else:
            right_a &= a
            right_b |= b
    return gap_from_masks(p, left_a, left_b), gap_from_masks(p, right_a, right_b)
