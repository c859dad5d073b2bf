"""Linear bases: sets of complete lines whose con-fusion gives back the
order, and the gluing of disjoint chains along a partition into classes."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .bits import iter_bits
from .deduction import _closure_rows, find_cycle
from .errors import (
    BadIndexError,
    CapExceededError,
    Condition1Error,
    Condition2Error,
    CycleError,
    InvalidPartitionError,
    InvariantError,
    NameCollisionError,
)
from .lines import _ascending, line_masks
from .poset import Poset
from .relation import RelationStructure

DEFAULT_LINE_CAP = 20

# the full family (needed for the case report) is built only for this many lines or fewer
FAMILY_CASE_LIMIT = 12


@dataclass(frozen=True)
class LinearBasis:
    line_indices: tuple[int, ...]


class _Lines:
    """Complete lines of one order with their pair sets as bit-rows."""

    def __init__(self, p: Poset) -> None:
        self.p = p
        self.masks = line_masks(p)
        self.rows = []
        for m in self.masks:
            # a line is totally ordered, so its pairs are the order restricted to it
            self.rows.append([p.rows[i] & m if m >> i & 1 else 0 for i in range(len(p))])

    def __len__(self) -> int:
        return len(self.masks)

    def check(self, indices: Iterable[int]) -> tuple[int, ...]:
        out = tuple(sorted(set(indices)))
        for k in out:
            if not 0 <= k < len(self.masks):
                raise BadIndexError(f"line index {k} out of range 0..{len(self.masks) - 1}")
        return out

    def regenerates(self, indices: Iterable[int]) -> bool:
        n = len(self.p)
        union = [0] * n
        for k in indices:
            for i, row in enumerate(self.rows[k]):
                union[i] |= row
        pairs = [(i, j) for i in range(n) for j in iter_bits(union[i])]
        return tuple(_closure_rows(n, pairs)) == self.p.rows


def is_linear_basis(p: Poset, indices: Iterable[int]) -> bool:
    """Whether the con-fusion of the selected complete lines is the whole order.

    >>> d = Poset.generated("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    >>> is_linear_basis(d, [0]), is_linear_basis(d, [0, 1])
    (False, True)
    """
    lines = _Lines(p)
    return lines.regenerates(lines.check(indices))


@dataclass(frozen=True)
class BasisFamily:
    bases: list[LinearBasis]
    line_count: int
    # 'a' when the irreducible bases form a complete transversal of the family
    # under inclusion, 'b' when they do not, None when the family was not built
    case: str | None


def _irreducible(lines: _Lines) -> list[tuple[int, ...]]:
    everything = tuple(range(len(lines)))
    # a line that alone carries some pair of the order is in every basis
    essential = tuple(k for k in everything if not lines.regenerates(i for i in everything if i != k))
    optional = [k for k in everything if k not in essential]
    found: list[frozenset[int]] = []
    for size in range(len(optional) + 1):
        for combo in combinations(optional, size):
            chosen = frozenset(essential) | frozenset(combo)
            if any(f <= chosen for f in found):
                continue
            if lines.regenerates(chosen):
                found.append(chosen)
    return [tuple(sorted(f)) for f in found]


def _all_bases(lines: _Lines) -> list[tuple[int, ...]]:
    out = []
    for size in range(len(lines) + 1):
        for combo in combinations(range(len(lines)), size):
            if lines.regenerates(combo):
                out.append(combo)
    return out


def _case(irreducible: Sequence[tuple[int, ...]], family: Sequence[tuple[int, ...]]) -> str:
    irr = [frozenset(b) for b in irreducible]
    antichain = all(not (x < y) for x in irr for y in irr)
    complete = all(any(x <= frozenset(b) or frozenset(b) <= x for x in irr) for b in family)
    return "a" if antichain and complete else "b"


def basis_family(p: Poset, mode: str = "irreducible", cap: int = DEFAULT_LINE_CAP) -> BasisFamily:
    """Linear bases of ``p``: ``irreducible``, ``absolute`` (the basis inside
    every basis, as a one-element list, or empty) or ``all``."""
    lines = _Lines(p)
    if len(lines) > cap:
        raise CapExceededError("complete line count", cap, len(lines))
    if mode not in ("irreducible", "absolute", "all"):
        raise ValueError(f"mode must be 'irreducible', 'absolute' or 'all', not {mode!r}")
    irreducible = _irreducible(lines)
    family = _all_bases(lines) if mode == "all" or len(lines) <= FAMILY_CASE_LIMIT else None
    case = _case(irreducible, family) if family is not None else None
    if mode == "all":
        chosen = family
    elif mode == "irreducible":
        chosen = irreducible
    else:
        chosen = irreducible if len(irreducible) == 1 else []
    return BasisFamily([LinearBasis(b) for b in chosen], len(lines), case)


def basis_final_section_check(p: Poset, cap: int = FAMILY_CASE_LIMIT) -> bool:
    """Every superset of a linear basis is a linear basis; raises InvariantError otherwise."""
    lines = _Lines(p)
    if len(lines) > cap:
        raise CapExceededError("complete line count", cap, len(lines))
    family = set(_all_bases(lines))
    everything = range(len(lines))
    for b in family:
        for k in everything:
            if k not in b and tuple(sorted(b + (k,))) not in family:
                raise InvariantError(f"adding line {k} to basis {b} loses the basis property")
    return True


# ---- gluing ---------------------------------------------------------------------


def glue_orders(chains: Sequence[Sequence[str]], classes: Iterable[Iterable[str]]) -> Poset:
    """Identify elements of disjoint chains class by class, then con-fuse.

    Each class is named after its least element.  Condition 1: a class
    meets each chain at most once.  Condition 2: two classes are ordered the
    same way by every chain meeting both.  A violation of condition 2 is a
    two-class cycle, so Condition2Error is also a CycleError.

    >>> glue_orders([["a", "b"], ["c", "d"]], [["a"], ["b", "c"], ["d"]]).sorted_pairs()
    [('a', 'b'), ('a', 'd'), ('b', 'd')]
    """
    owner: dict[str, int] = {}
    for k, chain in enumerate(chains):
        if len(set(chain)) != len(chain):
            raise NameCollisionError(f"chain {k} repeats an element")
        for x in chain:
            if x in owner:
                raise NameCollisionError(f"element {x!r} appears in chains {owner[x]} and {k}")
            owner[x] = k
    token: dict[str, str] = {}
    class_list = [sorted(set(c)) for c in classes]
    for c in class_list:
        if not c:
            raise InvalidPartitionError("classes must be nonempty")
        for x in c:
            if x not in owner:
                raise InvalidPartitionError(f"class member {x!r} is in no chain")
            if x in token:
                raise InvalidPartitionError(f"element {x!r} is in two classes")
            token[x] = c[0]
    missing = sorted(set(owner) - set(token))
    if missing:
        raise InvalidPartitionError(f"elements in no class: {missing}")

    for c in class_list:
        seen: dict[int, str] = {}
        for x in c:
            if owner[x] in seen:
                raise Condition1Error(f"class [{c[0]}] holds {seen[owner[x]]!r} and {x!r} from chain {owner[x]}")
            seen[owner[x]] = x

    order: dict[tuple[str, str], int] = {}
    pairs = set()
    for k, chain in enumerate(chains):
        for i, x in enumerate(chain):
            for y in chain[i + 1:]:
                tx, ty = token[x], token[y]
                if (ty, tx) in order:
                    raise Condition2Error(
                        [tx, ty, tx],
                        f"condition 2 fails: chain {order[ty, tx]} puts [{ty}] before [{tx}], chain {k} the reverse",
                    )
                order.setdefault((tx, ty), k)
                pairs.add((tx, ty))
    s = RelationStructure(sorted(set(token.values())), pairs)
    cycle = find_cycle(s)
    if cycle is not None:
        raise CycleError(cycle)
    return Poset.generated(s.elements, pairs)


def line_names(p: Poset, index: int) -> tuple[str, ...]:
    masks = line_masks(p)
    if not 0 <= index < len(masks):
        raise BadIndexError(f"line index {index} out of range")
    return tuple(p.elements[i] for i in _ascending(p, masks[index]))
