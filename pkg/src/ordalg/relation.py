"""Finite binary structures: a universe of named elements and a set of pairs.

The relation is held as a dense boolean adjacency matrix, one int bit-row
per element, indexed by the canonical (sorted by name) element order.
"""

from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Mapping
from functools import cached_property
from itertools import combinations

from .bits import from_indices, iter_bits, transpose
from .errors import CapExceededError, InvalidElementNameError, UnknownElementError

TOKEN_RE = re.compile(r"^[A-Za-z0-9_]+$")

DEFAULT_SUBJOIN_CAP = 12


def is_token(name: str) -> bool:
    return bool(TOKEN_RE.match(name))


def check_token(name: str) -> str:
    if not isinstance(name, str) or not is_token(name):
        raise InvalidElementNameError(f"element names are letters, digits and '_': got {name!r}")
    return name


class Comparability(enum.Enum):
    SYMMETRIC_PAIR = "SymmetricPair"
    ASYMMETRIC_FORWARD = "AsymmetricForward"
    ASYMMETRIC_BACKWARD = "AsymmetricBackward"
    INCOMPARABLE = "Incomparable"


class RelationStructure:
    """An immutable finite structure ``(M &)``.

    >>> s = RelationStructure("abc", [("a", "b")])
    >>> s.elements
    ('a', 'b', 'c')
    >>> s.has("a", "b"), s.has("b", "a")
    (True, False)
    """

    def __init__(self, universe: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> None:
        elements = tuple(sorted(set(universe)))
        index = {name: i for i, name in enumerate(elements)}
        rows = [0] * len(elements)
        for a, b in pairs:
            if a not in index:
                raise UnknownElementError(a)
            if b not in index:
                raise UnknownElementError(b)
            rows[index[a]] |= 1 << index[b]
        self.elements = elements
        self.index = index
        self.rows = tuple(rows)

    @classmethod
    def from_rows(cls, elements: tuple[str, ...], rows: Iterable[int]):
        """Build directly from canonical (sorted) elements and bit-rows; no checks."""
        obj = cls.__new__(cls)
        obj.elements = elements
        obj.index = {name: i for i, name in enumerate(elements)}
        obj.rows = tuple(rows)
        return obj

    # ---- basic views -------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelationStructure):
            return NotImplemented
        return self.elements == other.elements and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.elements, self.rows))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}&{b}" for a, b in self.sorted_pairs())
        return f"{type(self).__name__}({list(self.elements)}, {{{body}}})"

    @property
    def universe(self) -> frozenset[str]:
        return frozenset(self.elements)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """Transposed rows: bit j of ``cols[i]`` is set iff (j, i) is a pair."""
        return tuple(transpose(self.rows))

    @cached_property
    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.sorted_pairs())

    def sorted_pairs(self) -> list[tuple[str, str]]:
        els = self.elements
        return [(els[i], els[j]) for i, row in enumerate(self.rows) for j in iter_bits(row)]

    @property
    def pair_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElementError(name) from None

    def mask(self, names: Iterable[str]) -> int:
        return from_indices(self.idx(n) for n in names)

    def names(self, mask: int) -> frozenset[str]:
        els = self.elements
        return frozenset(els[i] for i in iter_bits(mask))

    def sorted_names(self, mask: int) -> list[str]:
        els = self.elements
        return [els[i] for i in iter_bits(mask)]

    def has(self, a: str, b: str) -> bool:
        return bool(self.rows[self.idx(a)] >> self.idx(b) & 1)

    def induced(self, names: Iterable[str]) -> "RelationStructure":
        keep = sorted(set(names))
        for n in keep:
            self.idx(n)
        return RelationStructure(keep, [(a, b) for a, b in self.sorted_pairs() if a in keep and b in keep])

    def induced_mask(self, mask: int) -> RelationStructure:
        """Induced structure on ``mask``, returned as a plain RelationStructure."""
        idxs = list(iter_bits(mask))
        pos = {old: new for new, old in enumerate(idxs)}
        rows = []
        for old in idxs:
            row = 0
            for j in iter_bits(self.rows[old] & mask):
                row |= 1 << pos[j]
            rows.append(row)
        return RelationStructure.from_rows(tuple(self.elements[i] for i in idxs), rows)

    def rename(self, mapping: Mapping[str, str]) -> "RelationStructure":
        return RelationStructure(
            (mapping[e] for e in self.elements),
            ((mapping[a], mapping[b]) for a, b in self.sorted_pairs()),
        )

    def reflexive_mask(self) -> int:
        return from_indices(i for i, row in enumerate(self.rows) if row >> i & 1)

    def is_transitive(self) -> bool:
        return self.transitivity_witness() is None

    def transitivity_witness(self) -> tuple[str, str, str] | None:
        """First (a, b, c) in canonical order with a&b, b&c but not a&c."""
        rows = self.rows
        for i, row in enumerate(rows):
            for j in iter_bits(row):
                missing = rows[j] & ~row
                if missing:
                    k = (missing & -missing).bit_length() - 1
                    els = self.elements
                    return (els[i], els[j], els[k])
        return None


# ---- operations ------------------------------------------------------


def comparability(s: RelationStructure, a: str, b: str) -> Comparability:
    i, j = s.idx(a), s.idx(b)
    fwd = bool(s.rows[i] >> j & 1)
    bwd = bool(s.rows[j] >> i & 1)
    if fwd and bwd:
        return Comparability.SYMMETRIC_PAIR
    if fwd:
        return Comparability.ASYMMETRIC_FORWARD
    if bwd:
        return Comparability.ASYMMETRIC_BACKWARD
    return Comparability.INCOMPARABLE


def comparable_mask(s: RelationStructure, i: int) -> int:
    return s.rows[i] | s.cols[i]


def connected_components(s: RelationStructure) -> list[RelationStructure]:
    """Split ``s`` into connected, pairwise non-connected induced pieces.

    Each piece is grown from its least remaining element by repeatedly
    adjoining everything comparable to the current set until it stops
    growing.  An isolated element, reflexive or not, is its own piece.
    """
    comp = [s.rows[i] | s.cols[i] for i in range(len(s))]
    remaining = s.full_mask
    out = []
    while remaining:
        seed = remaining & -remaining
        piece = seed
        while True:
            grown = piece
            for i in iter_bits(piece):
                grown |= comp[i]
            if grown == piece:
                break
            piece = grown
        out.append(s.induced_mask(piece))
        remaining &= ~piece
    return out


def close_side(s: RelationStructure, names: Iterable[str], side: str) -> frozenset[str]:
    """One-step left (predecessor) or right (successor) closure of a set."""
    m = s.mask(names)
    if side == "left":
        table = s.cols
    elif side == "right":
        table = s.rows
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    out = m
    for i in iter_bits(m):
        out |= table[i]
    return s.names(out)


def invert(s: RelationStructure) -> RelationStructure:
    return RelationStructure.from_rows(s.elements, s.cols)


def kernel(s: RelationStructure) -> tuple[RelationStructure, frozenset[str]]:
    """Return the structured kernel and the amorphous residue."""
    touched = 0
    for i, row in enumerate(s.rows):
        if row:
            touched |= (1 << i) | row
    return s.induced_mask(touched), s.names(s.full_mask & ~touched)


def wide_isomorphic(s1: RelationStructure, s2: RelationStructure) -> dict[str, str] | None:
    """A pair-preserving and pair-reflecting bijection between the kernels, or None."""
    k1, _ = kernel(s1)
    k2, _ = kernel(s2)
    return isomorphism(k1, k2)


def isomorphism(s1: RelationStructure, s2: RelationStructure) -> dict[str, str] | None:
    n = len(s1)
    if n != len(s2) or s1.pair_count != s2.pair_count:
        return None

    def signature(s: RelationStructure, i: int) -> tuple[int, int, int]:
        return (s.rows[i].bit_count(), s.cols[i].bit_count(), s.rows[i] >> i & 1)

    sig1 = [signature(s1, i) for i in range(n)]
    sig2 = [signature(s2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    # most constrained first: rarest signature, then most neighbours
    order = sorted(range(n), key=lambda i: (sig1.count(sig1[i]), -sum(sig1[i][:2]), i))
    image = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used >> j & 1 or sig2[j] != sig1[i]:
                continue
            ok = True
            for prev in order[:k]:
                pj = image[prev]
                if (s1.rows[i] >> prev & 1) != (s2.rows[j] >> pj & 1):
                    ok = False
                    break
                if (s1.rows[prev] >> i & 1) != (s2.rows[pj] >> j & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[i] = j
            used |= 1 << j
            if extend(k + 1):
                return True
            used &= ~(1 << j)
            image[i] = -1
        return False

    if not extend(0):
        return None
    return {s1.elements[i]: s2.elements[image[i]] for i in range(n)}


def subset_token(names: Iterable[str]) -> str:
    return "{" + ",".join(sorted(names)) + "}"


def subjoin(s: RelationStructure, size_cap: int = DEFAULT_SUBJOIN_CAP) -> RelationStructure:
    """Lift ``s`` one level to its subsets: A & B iff both nonempty and every a & every b.

    Subsets are named ``{a,b,...}``; these names are not file-format tokens.
    """
    n = len(s)
    if n > size_cap:
        raise CapExceededError("subjoin universe size", size_cap, n)
    subsets = [0]
    for k in range(1, n + 1):
        subsets.extend(from_indices(c) for c in combinations(range(n), k))
    names = {m: subset_token(s.names(m)) for m in subsets}
    pairs = []
    nonempty = subsets[1:]
    # A & B iff B is inside the common successors of every a in A
    common = {}
    for a in nonempty:
        acc = s.full_mask
        for i in iter_bits(a):
            acc &= s.rows[i]
        common[a] = acc
    for a in nonempty:
        c = common[a]
        if not c:
            continue
        for b in nonempty:
            if b & ~c == 0:
                pairs.append((names[a], names[b]))
    return RelationStructure(names.values(), pairs)
