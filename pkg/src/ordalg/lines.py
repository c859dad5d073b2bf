"""Complete lines (maximal chains) and complete transversals (maximal
antichains): half-rays, ascending crossings, passing through gaps, the
three-class partition, and how lines meet transversals."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .bits import iter_bits, subset_key
from .errors import (
    InvalidTransversalError,
    InvariantError,
    MultipleIntersectionError,
    NotAChainError,
    NotAHalfRayError,
)
from .gaps import Gap, validate_gap
from .poset import Poset


@dataclass(frozen=True)
class CompleteLine:
    chain: tuple[str, ...]  # ascending

    @property
    def members(self) -> frozenset[str]:
        return frozenset(self.chain)


@dataclass(frozen=True)
class CompleteTransversal:
    antichain: frozenset[str]


def _ascending(p: Poset, m: int) -> list[int]:
    return sorted(iter_bits(m), key=lambda i: p.cols[i].bit_count())


def line_masks(p: Poset) -> list[int]:
    """Maximal chains as masks: paths along covers from a minimal to a maximal element."""
    covers = p.cover_rows
    out = []
    stack = [(i, 1 << i) for i in reversed(range(len(p))) if not p.cols[i]]
    while stack:
        i, path = stack.pop()
        nxt = covers[i]
        if not nxt:
            out.append(path)
            continue
        for j in reversed(list(iter_bits(nxt))):
            stack.append((j, path | 1 << j))
    out.sort(key=lambda m: [p.elements[i] for i in _ascending(p, m)])
    return out


def complete_lines(p: Poset) -> list[CompleteLine]:
    """All maximal chains, ordered by their ascending name sequences.

    >>> d = Poset.generated("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    >>> [line.chain for line in complete_lines(d)]
    [('a', 'b', 'd'), ('a', 'c', 'd')]
    """
    return [CompleteLine(tuple(p.elements[i] for i in _ascending(p, m))) for m in line_masks(p)]


def _chain_mask(p: Poset, chain: Iterable[str]) -> int:
    m = p.mask(chain)
    if not p.is_chain_mask(m):
        raise NotAChainError(f"{sorted(p.names(m))} is not totally ordered")
    return m


def _comparable_to_all(p: Poset, m: int) -> int:
    # elements outside m comparable with every member of m
    acc = p.full_mask & ~m
    for i in iter_bits(m):
        acc &= p.rows[i] | p.cols[i]
    return acc


def is_half_ray_mask(p: Poset, m: int, side: str) -> bool:
    if side == "initial":
        beyond = p.upper_mask(m)
    elif side == "final":
        beyond = p.lower_mask(m)
    else:
        raise ValueError(f"side must be 'initial' or 'final', not {side!r}")
    return _comparable_to_all(p, m) & ~beyond == 0


def half_ray(p: Poset, chain: Iterable[str], side: str = "initial") -> bool:
    """Whether the chain can only be prolonged upward (``initial``) or downward (``final``).

    Equivalently, the chain is a complete line of the order left after
    removing its strict upper (lower) bounds.
    """
    return is_half_ray_mask(p, _chain_mask(p, chain), side)


def _initially_identical(u: Poset, l1: Sequence[int], l2: Sequence[int]) -> bool:
    # a common initial half-ray of u is always a common prefix of the two lines
    prefix = 0
    for x, y in zip(l1, l2):
        if x != y:
            break
        prefix |= 1 << x
        if is_half_ray_mask(u, prefix, "initial"):
            return True
    return False


def crossing_index(p: Poset, chain: Iterable[str]) -> int:
    """Number of pairwise initially distinct complete lines of the order above an initial half-ray.

    Lines are initially identical when they share a nonempty initial
    half-ray of that order; the count is the number of classes.
    """
    m = _chain_mask(p, chain)
    if not is_half_ray_mask(p, m, "initial"):
        raise NotAHalfRayError(f"{sorted(p.names(m))} is not an initial half-ray")
    u = p.induced_mask(p.upper_mask(m))
    lines = [_ascending(u, lm) for lm in line_masks(u)]
    reps: list[list[int]] = []
    for line in lines:
        if not any(_initially_identical(u, line, r) for r in reps):
            reps.append(line)
    return len(reps)


@dataclass(frozen=True)
class PassReport:
    passes: bool
    criterion_agrees: bool


def line_passes_gap(p: Poset, line: CompleteLine | Iterable[str], g: Gap) -> PassReport:
    """A line passes a gap when it misses the neutral interval.

    The criterion: upper(L and A) and lower(L and B) do not meet.
    """
    names = line.chain if isinstance(line, CompleteLine) else tuple(line)
    lm = _chain_mask(p, names)
    if _comparable_to_all(p, lm):
        raise NotAChainError(f"{sorted(names)} is not a complete line")
    a, b = validate_gap(p, g)
    neutral = p.full_mask & ~(a | b)
    passes = not lm & neutral
    by_bounds = not p.upper_mask(lm & a) & p.lower_mask(lm & b)
    return PassReport(passes, passes == by_bounds)


# ---- transversals ---------------------------------------------------------------


def transversal_masks(p: Poset) -> list[int]:
    """Maximal antichains: maximal cliques of the incomparability graph."""
    n = len(p)
    incomparable = [p.full_mask & ~(p.rows[i] | p.cols[i] | 1 << i) for i in range(n)]
    out = []

    def grow(r: int, cand: int, excl: int) -> None:
        if not cand and not excl:
            out.append(r)
            return
        for v in list(iter_bits(cand)):
            grow(r | 1 << v, cand & incomparable[v], excl & incomparable[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    if n:
        grow(0, p.full_mask, 0)
    return sorted(out, key=subset_key)


def complete_transversals(p: Poset) -> list[CompleteTransversal]:
    return [CompleteTransversal(p.names(m)) for m in transversal_masks(p)]


def is_complete_transversal_mask(p: Poset, m: int) -> bool:
    if not p.is_antichain_mask(m):
        return False
    covered = m
    for i in iter_bits(m):
        covered |= p.rows[i] | p.cols[i]
    return covered == p.full_mask


def _transversal_mask(p: Poset, t: CompleteTransversal | Iterable[str]) -> int:
    names = t.antichain if isinstance(t, CompleteTransversal) else t
    m = p.mask(names)
    if not is_complete_transversal_mask(p, m):
        raise InvalidTransversalError(f"{sorted(p.names(m))} is not a complete transversal")
    return m


@dataclass(frozen=True)
class TransversalPartition:
    class0: frozenset[str]
    class1: frozenset[str]  # below the transversal
    class2: frozenset[str]  # above it


def transversal_partition(p: Poset, t: CompleteTransversal | Iterable[str]) -> TransversalPartition:
    m = _transversal_mask(p, t)
    below = p.down_mask(m) & ~m
    above = p.up_mask(m) & ~m
    if below & above:
        raise InvalidTransversalError("an element lies both below and above the transversal")
    if not p.is_down_mask(below) or not p.is_up_mask(above) or (m | below | above) != p.full_mask:
        raise InvariantError("transversal classes do not split the order into sections")
    return TransversalPartition(p.names(m), p.names(below), p.names(above))


@dataclass(frozen=True)
class Point:
    element: str


@dataclass(frozen=True)
class DisjunctiveGapOfLine:
    prefix: tuple[str, ...]
    suffix: tuple[str, ...]


def transversal_crosses_line(
    p: Poset, t: CompleteTransversal | Iterable[str], line: CompleteLine | Iterable[str]
) -> Point | DisjunctiveGapOfLine:
    m = _transversal_mask(p, t)
    names = line.chain if isinstance(line, CompleteLine) else tuple(line)
    lm = _chain_mask(p, names)
    hit = m & lm
    if hit.bit_count() > 1:
        raise MultipleIntersectionError(f"{sorted(p.names(hit))} all lie on one line")
    if hit:
        return Point(p.elements[hit.bit_length() - 1])
    below = p.down_mask(m) & ~m & lm
    above = p.up_mask(m) & ~m & lm
    if below | above != lm or not p.all_below(below, above):
        raise InvariantError("transversal does not cut the line into a disjunctive gap")
    return DisjunctiveGapOfLine(
        tuple(p.elements[i] for i in _ascending(p, below)),
        tuple(p.elements[i] for i in _ascending(p, above)),
    )


def problem13_search(p: Poset) -> bool:
    """True iff every complete line meets every complete transversal in exactly one point."""
    transversals = transversal_masks(p)
    return all((lm & tm).bit_count() == 1 for lm in line_masks(p) for tm in transversals)
