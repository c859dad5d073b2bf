"""Transitive deduction: round-based closure, the taxonomy of transitive
structures, bases of a closed relation, and con-fusion with cycle witnesses."""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .bits import iter_bits
from .errors import CapExceededError, NotAnOrderError, NotTransitiveError
from .relation import RelationStructure

DEFAULT_BASES_CAP = 20

Pair = tuple[str, str]


@dataclass(frozen=True)
class ClosureTrace:
    """Pair sets ``P, P1, P2, ...`` ending with two equal entries."""

    stages: tuple[frozenset[Pair], ...]

    @property
    def stage_count(self) -> int:
        return len(self.stages) - 2


def _round(rows: Sequence[int]) -> list[int]:
    # every new pair comes from two pairs of the previous round sharing a middle element
    out = []
    for row in rows:
        acc = row
        for j in iter_bits(row):
            acc |= rows[j]
        out.append(acc)
    return out


def deductive_closure(p: RelationStructure) -> tuple[RelationStructure, ClosureTrace]:
    """Least transitively closed superset of ``p``'s pairs, with the round-by-round trace.

    >>> s = RelationStructure("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    >>> closed, trace = deductive_closure(s)
    >>> trace.stage_count, len(closed.pairs)
    (2, 6)
    """
    rows = list(p.rows)
    stages = [RelationStructure.from_rows(p.elements, rows).pairs]
    while True:
        nxt = _round(rows)
        stages.append(RelationStructure.from_rows(p.elements, nxt).pairs)
        if nxt == rows:
            break
        rows = nxt
    return RelationStructure.from_rows(p.elements, rows), ClosureTrace(tuple(stages))


def close(p: RelationStructure) -> RelationStructure:
    return deductive_closure(p)[0]


# ---- taxonomy -----------------------------------------------------------


class StructureTaxon(enum.Enum):
    TOTAL_ORDER = "TotalOrder"
    PARTIAL_ORDER = "PartialOrder"
    CLASSIFICATION = "Classification"
    REFLEXIVE_ASYMMETRIC_NO_SYM = "ReflexiveAsymmetricNoSym"
    REFLEXIVE_ASYMMETRIC_WITH_SYM = "ReflexiveAsymmetricWithSym"
    MIXED = "Mixed"


def classify(s: RelationStructure) -> StructureTaxon:
    w = s.transitivity_witness()
    if w is not None:
        raise NotTransitiveError(w)
    refl = s.reflexive_mask()
    n = len(s)
    rows, cols = s.rows, s.cols
    if refl == 0:
        for i in range(n):
            others = s.full_mask & ~(1 << i)
            if (rows[i] | cols[i]) & others != others:
                return StructureTaxon.PARTIAL_ORDER
        return StructureTaxon.TOTAL_ORDER
    if refl != s.full_mask:
        return StructureTaxon.MIXED
    asym = any(rows[i] & ~cols[i] for i in range(n))
    if not asym:
        return StructureTaxon.CLASSIFICATION
    sym = any((rows[i] & cols[i]) & ~(1 << i) for i in range(n))
    return StructureTaxon.REFLEXIVE_ASYMMETRIC_WITH_SYM if sym else StructureTaxon.REFLEXIVE_ASYMMETRIC_NO_SYM


# ---- bases ---------------------------------------------------------------


def _closure_rows(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    rows = [0] * n
    for i, j in pairs:
        rows[i] |= 1 << j
    while True:
        nxt = _round(rows)
        if nxt == rows:
            return rows
        rows = nxt


def is_base(p: RelationStructure, s: RelationStructure) -> bool:
    """True iff the deductive closure of ``p``'s pairs is exactly ``s``'s pairs."""
    if p.elements != s.elements:
        p = RelationStructure(s.elements, p.sorted_pairs())
    return tuple(close(p).rows) == s.rows


def _require_closed(s: RelationStructure) -> None:
    w = s.transitivity_witness()
    if w is not None:
        raise NotTransitiveError(w)


def bases(s: RelationStructure, mode: str = "irreducible", cap: int = DEFAULT_BASES_CAP) -> list[RelationStructure]:
    """Bases of a transitively closed structure.

    ``irreducible``: bases with no base as a strict subset.  ``absolute``:
    the base contained in every base, as a one-element list, or an empty
    list when none exists.  ``all``: every base (needs ``pair_count <= cap``).

    Bases are upward closed, so a base is irreducible iff dropping any
    single pair breaks it; pairs whose removal from the full relation
    already breaks it ("essential" pairs) belong to every base.
    """
    _require_closed(s)
    n = len(s)
    pairs = [(s.index[a], s.index[b]) for a, b in s.sorted_pairs()]
    target = list(s.rows)

    def works(chosen: Iterable[tuple[int, int]]) -> bool:
        return _closure_rows(n, chosen) == target

    def as_structure(chosen: Iterable[tuple[int, int]]) -> RelationStructure:
        els = s.elements
        return RelationStructure(els, [(els[i], els[j]) for i, j in chosen])

    if mode == "all":
        if len(pairs) > cap:
            raise CapExceededError("pair count", cap, len(pairs))
        out = []
        for k in range(len(pairs) + 1):
            for combo in combinations(pairs, k):
                if works(combo):
                    out.append(as_structure(combo))
        return out
    if mode not in ("irreducible", "absolute"):
        raise ValueError(f"mode must be 'irreducible', 'absolute' or 'all', not {mode!r}")

    essential = [pr for pr in pairs if not works([q for q in pairs if q != pr])]
    optional = [pr for pr in pairs if pr not in essential]
    if len(optional) > cap:
        raise CapExceededError("non-essential pair count", cap, len(optional))
    found: list[frozenset[tuple[int, int]]] = []
    for k in range(len(optional) + 1):
        for combo in combinations(optional, k):
            chosen = frozenset(essential) | frozenset(combo)
            if any(f <= chosen for f in found):
                continue
            if works(chosen):
                found.append(chosen)
    irreducible = [as_structure(sorted(f)) for f in found]
    if mode == "irreducible":
        return irreducible
    return irreducible if len(irreducible) == 1 else []


# ---- con-fusion -------------------------------------------------------------


def _union(structures: Sequence[RelationStructure]) -> RelationStructure:
    universe: set[str] = set()
    pairs: set[Pair] = set()
    for st in structures:
        universe.update(st.elements)
        pairs.update(st.pairs)
    return RelationStructure(universe, pairs)


def confuse(structures: Sequence[RelationStructure]) -> RelationStructure:
    """Union of universes and pairs, then deductive closure."""
    return close(_union(structures))


def find_cycle(s: RelationStructure) -> list[str] | None:
    """Shortest directed cycle ``[a, b1, ..., a]`` in the pairs of ``s``.

    Ties go to the canonically least starting element; a loop ``(a, a)``
    is the cycle ``[a, a]``.
    """
    best: list[int] | None = None
    n = len(s)
    for start in range(n):
        if s.rows[start] >> start & 1:
            cyc = [start, start]
        else:
            parent = {start: -1}
            queue = deque([start])
            cyc = None
            while queue and cyc is None:
                u = queue.popleft()
                for v in iter_bits(s.rows[u]):
                    if v == start:
                        path = [u]
                        while parent[path[-1]] != -1:
                            path.append(parent[path[-1]])
                        cyc = path[::-1] + [start]
                        break
                    if v not in parent:
                        parent[v] = u
                        queue.append(v)
        if cyc is not None and (best is None or len(cyc) < len(best)):
            best = cyc
    if best is None:
        return None
    return [s.elements[i] for i in best]


def _is_order(s: RelationStructure) -> bool:
    return s.reflexive_mask() == 0 and s.is_transitive()


def confusion_is_order(structures: Sequence[RelationStructure]) -> tuple[bool, list[str] | None]:
    """Whether the con-fusion of the given orders is again an order.

    Returns ``(True, None)`` or ``(False, cycle)`` where the cycle is drawn
    from the input pairs.
    """
    for st in structures:
        if not _is_order(st):
            raise NotAnOrderError(f"input is not an order: {st!r}")
    cyc = find_cycle(_union(structures))
    return (cyc is None, cyc)


# ---- lines in transitive structures --------------------------------------


def complete_lines_general(s: RelationStructure) -> list[frozenset[str]]:
    """Maximal sets whose distinct members are pairwise comparable (brute force, small inputs)."""
    n = len(s)
    comp = [(s.rows[i] | s.cols[i]) & ~(1 << i) for i in range(n)]
    out = []
    # Bron-Kerbosch without pivoting; inputs are tiny
    def grow(r: int, cand: int, excl: int) -> None:
        if not cand and not excl:
            out.append(r)
            return
        for v in list(iter_bits(cand)):
            grow(r | 1 << v, cand & comp[v], excl & comp[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    if n:
        grow(0, s.full_mask, 0)
    return sorted((s.names(m) for m in out), key=lambda fs: sorted(fs))
