"""Universal ("matrix") orders: the phi operation that fills every gap at
once, the tower grown from a one-element seed, embedding search, and the
stage-by-stage placement that realises every finite order inside the tower.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .bits import subset_key
from .errors import BudgetExceededError, InvariantError, OrdAlgError, UsageError
from .gaps import Gap, _fill_masks, gap_from_masks, iter_gap_masks
from .poset import Poset
from .relation import check_token

DEFAULT_ELEMENT_BUDGET = 50_000
DEFAULT_SEED_NAME = "a"


def default_budget() -> int:
    raw = os.environ.get("ORDALG_BUDGET")
    if not raw:
        return DEFAULT_ELEMENT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"ORDALG_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("ORDALG_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class PhiStage:
    """One level of the tower.

    ``provenance`` maps each element to the gap of the previous stage that
    spawned it, or None for the seed.  ``born`` gives the level at which
    each element first appeared.  ``spawned`` maps gap mask pairs of the
    previous stage to the name of the element that fills them.
    """

    level: int
    poset: Poset
    provenance: dict[str, Gap | None]
    born: dict[str, int]
    spawned: dict[tuple[int, int], str] = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.poset)

    def new_elements(self) -> list[str]:
        return sorted(nm for nm, lv in self.born.items() if lv == self.level)


def stage_name(prefix: str, level: int, index: int) -> str:
    return f"{prefix}{level}_{index}"


def min_gap_count(p: Poset) -> int:
    """Cheap lower bound on the number of gaps.

    The exterior gap, ``(0, up x)`` and ``(down x, 0)`` for each x, and
    ``(down x, up y)`` for each pair x < y are pairwise distinct gaps.
    """
    return 1 + 2 * len(p) + p.pair_count


def _count_gaps_upto(p: Poset, limit: int) -> int:
    count = 0
    for _ in iter_gap_masks(p):
        count += 1
        if count > limit:
            break
    return count


def seed_stage(prefix: str = DEFAULT_SEED_NAME) -> PhiStage:
    check_token(prefix)
    return PhiStage(0, Poset([prefix]), {prefix: None}, {prefix: 0})


def phi_step(stage: PhiStage, element_budget: int | None = None, prefix: str = DEFAULT_SEED_NAME) -> PhiStage:
    """Fill every gap of ``stage`` simultaneously.

    Raises BudgetExceededError when the next stage would hold more than
    ``element_budget`` elements; ``measured`` is then the exact next size or,
    when counting was cut short, a lower bound for it.
    """
    budget = default_budget() if element_budget is None else element_budget
    p = stage.poset
    room = budget - len(p)
    lower = min_gap_count(p)
    if lower > room:
        raise BudgetExceededError(f"stage {stage.level + 1} size (a lower bound)", budget, len(p) + lower)
    counted = _count_gaps_upto(p, room)
    if counted > room:
        raise BudgetExceededError(f"stage {stage.level + 1} size (a lower bound; counting stopped)", budget, len(p) + counted)
    return _phi_step(stage, prefix)


def _phi_step(stage: PhiStage, prefix: str) -> PhiStage:
    p = stage.poset
    masks = sorted(iter_gap_masks(p), key=lambda ab: (subset_key(ab[0]), subset_key(ab[1])))
    level = stage.level + 1
    names = [stage_name(prefix, level, i) for i in range(len(masks))]
    clash = set(names) & set(p.elements)
    if clash:
        raise InvariantError(f"fresh names collide: {sorted(clash)}")
    q = _fill_masks(p, masks, names)
    provenance = dict(stage.provenance)
    born = dict(stage.born)
    spawned = {}
    for (a, b), nm in zip(masks, names):
        provenance[nm] = gap_from_masks(p, a, b)
        born[nm] = level
        spawned[a, b] = nm
    return PhiStage(level, q, provenance, born, spawned)


@lru_cache(maxsize=8)
def _materialized(level: int, prefix: str) -> PhiStage:
    if level == 0:
        return seed_stage(prefix)
    return _phi_step(_materialized(level - 1, prefix), prefix)


_known_sizes: dict[tuple[int, str], int] = {}


def next_stage(prev: PhiStage, element_budget: int | None = None, prefix: str = DEFAULT_SEED_NAME) -> PhiStage:
    """Budget-checked ``phi_step`` for tower stages, reusing stages already built."""
    budget = default_budget() if element_budget is None else element_budget
    key = (prev.level + 1, prefix)
    size = _known_sizes.get(key)
    if size is None:
        phi_step(prev, budget, prefix)  # raises when over budget
    elif size > budget:
        raise BudgetExceededError(f"stage {key[0]} size", budget, size)
    stage = _materialized(*key)
    _known_sizes[key] = stage.size
    return stage


def materialize(level: int, element_budget: int | None = None, prefix: str = DEFAULT_SEED_NAME) -> PhiStage:
    """Stage ``level`` of the tower; raises BudgetExceededError past the budget."""
    stage = _materialized(0, prefix)
    for _ in range(level):
        stage = next_stage(stage, element_budget, prefix)
    return stage


@dataclass(frozen=True)
class PhiTower:
    stages: tuple[PhiStage, ...]
    requested: int
    budget: int
    complete: bool
    budget_report: str | None = None
    next_size_at_least: int | None = None

    @property
    def sizes(self) -> list[int]:
        return [st.size for st in self.stages]


def phi_tower(k: int, element_budget: int | None = None, prefix: str = DEFAULT_SEED_NAME) -> PhiTower:
    """Stages ``0..k`` from the seed; stops early, with a report, once the budget is hit.

    >>> phi_tower(2).sizes
    [1, 4, 22]
    """
    if k < 0:
        raise UsageError("tower level must be non-negative")
    budget = default_budget() if element_budget is None else element_budget
    stages = [materialize(0, budget, prefix)]
    for level in range(1, k + 1):
        try:
            stages.append(next_stage(stages[-1], budget, prefix))
        except BudgetExceededError as exc:
            return PhiTower(tuple(stages), k, budget, False, str(exc), exc.measured)
    return PhiTower(tuple(stages), k, budget, True)


# ---- embeddings -----------------------------------------------------------------


def check_embedding(target: Poset, host: Poset, image: dict[str, str]) -> bool:
    """Injective, order-preserving and order-reflecting."""
    if set(image) != set(target.elements) or len(set(image.values())) != len(image):
        return False
    for a in target.elements:
        for b in target.elements:
            if target.has(a, b) != host.has(image[a], image[b]):
                return False
    return True


def find_embedding(target: Poset, host: Poset) -> dict[str, str] | None:
    """First order embedding of ``target`` into ``host`` under canonical ordering, or None."""
    n, m = len(target), len(host)
    if n > m:
        return None
    order = list(target.linear_extension)
    up_t = [r.bit_count() for r in target.rows]
    down_t = [c.bit_count() for c in target.cols]
    up_h = [r.bit_count() for r in host.rows]
    down_h = [c.bit_count() for c in host.cols]
    image = [-1] * n
    used = 0

    def fits(i: int, j: int, k: int) -> bool:
        if up_h[j] < up_t[i] or down_h[j] < down_t[i]:
            return False
        for prev in order[:k]:
            pj = image[prev]
            if (target.rows[i] >> prev & 1) != (host.rows[j] >> pj & 1):
                return False
            if (target.rows[prev] >> i & 1) != (host.rows[pj] >> j & 1):
                return False
        return True

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        i = order[k]
        for j in range(m):
            if used >> j & 1 or not fits(i, j, k):
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
    return {target.elements[i]: host.elements[image[i]] for i in range(n)}


@dataclass(frozen=True)
class HostElement:
    """An image in the tower: a materialized element, or a symbolic one named
    by a gap of the last materialized stage."""

    stage: int
    name: str
    gap: Gap | None = None  # set only for symbolic elements

    @property
    def symbolic(self) -> bool:
        return self.gap is not None


@dataclass(frozen=True)
class PsiEmbedding:
    image: dict[str, HostElement]
    well_order: tuple[str, ...]
    materialized: int  # highest stage built while embedding

    @property
    def max_stage(self) -> int:
        return max((h.stage for h in self.image.values()), default=0)


class _Host:
    """Comparisons across materialized stages and one symbolic stage above them."""

    def __init__(self, budget: int, prefix: str, max_materialized: int | None) -> None:
        self.budget = budget
        self.prefix = prefix
        self.limit = max_materialized
        self.stages = [materialize(0, budget, prefix)]
        self.frozen = False  # set once the budget stops further materialization

    def stage(self, level: int) -> PhiStage | None:
        """Materialized stage ``level``, or None when it must stay symbolic."""
        while len(self.stages) <= level:
            if self.frozen or (self.limit is not None and len(self.stages) > self.limit):
                return None
            try:
                self.stages.append(next_stage(self.stages[-1], self.budget, self.prefix))
            except BudgetExceededError:
                if self.limit is not None:
                    raise
                self.frozen = True
                return None
        return self.stages[level]

    @property
    def top(self) -> PhiStage:
        return self.stages[-1]

    def less(self, x: HostElement, y: HostElement) -> bool:
        if not x.symbolic and not y.symbolic:
            return self.top.poset.has(x.name, y.name)
        if x.symbolic and y.symbolic:
            return bool(x.gap.final & y.gap.initial)
        if x.symbolic:
            return y.name in x.gap.final
        return x.name in y.gap.initial


def embed_via_psi(
    target: Poset,
    well_order: Sequence[str] | None = None,
    tower_budget: int | None = None,
    max_materialized: int | None = None,
    prefix: str = DEFAULT_SEED_NAME,
) -> PsiEmbedding:
    """Place the elements of ``target`` one at a time inside the tower.

    Each element goes to the lowest stage ``s + 1`` whose element spawned by
    the gap (down-closure of the images below it, up-closure of the images
    above it), both taken inside stage ``s``, is still free and compares
    correctly with every image placed so far.  The first element goes to
    the seed.  Taking ``s`` as the highest stage holding an earlier image
    always works, so the search ends.  Stages above ``max_materialized`` (or above
    what the budget allows) are represented by gaps of the top materialized
    stage; at most one symbolic level is available.
    """
    order = list(target.linear_extension_names() if well_order is None else well_order)
    if sorted(order) != list(target.elements):
        raise UsageError("well order must list every element of the target exactly once")
    budget = default_budget() if tower_budget is None else tower_budget
    host = _Host(budget, prefix, max_materialized)
    image: dict[str, HostElement] = {}
    used: set[HostElement] = set()
    for x in order:
        if not image:
            seed = HostElement(0, prefix)
            image[x] = seed
            used.add(seed)
            continue
        below = [image[y] for y in image if target.has(y, x)]
        above = [image[y] for y in image if target.has(x, y)]
        highest = max(h.stage for h in image.values())
        placed = None
        for s in range(highest + 1):
            cand = _candidate(host, s, below, above)
            if cand is None:
                break
            if cand in used:
                continue
            if all(_agrees(host, target, y, x, image[y], cand) for y in image):
                placed = cand
                break
        if placed is None:
            raise BudgetExceededError(
                "materialized stages needed for the embedding", host.top.level, highest + 1
            )
        image[x] = placed
        used.add(placed)
    emb = PsiEmbedding(image, tuple(order), host.top.level)
    for a in target.elements:
        for b in target.elements:
            if a != b and target.has(a, b) != host.less(image[a], image[b]):
                raise InvariantError(f"placement of {a!r}, {b!r} does not reflect the target order")
    return emb


def _agrees(host: _Host, target: Poset, y: str, x: str, hy: HostElement, hx: HostElement) -> bool:
    return host.less(hy, hx) == target.has(y, x) and host.less(hx, hy) == target.has(x, y)


def _candidate(host: _Host, s: int, below: list[HostElement], above: list[HostElement]) -> HostElement | None:
    base = host.stage(s)
    if base is None:
        return None
    p = base.poset
    in_base = lambda h: not h.symbolic and h.name in p.index  # noqa: E731
    a = p.down_mask(p.mask(h.name for h in below if in_base(h)))
    b = p.up_mask(p.mask(h.name for h in above if in_base(h)))
    nxt = host.stage(s + 1)
    if nxt is not None:
        return HostElement(s + 1, nxt.spawned[a, b])
    g = gap_from_masks(p, a, b)
    return HostElement(s + 1, f"{host.prefix}{s + 1}[{g.token}]", g)


# ---- universality report ---------------------------------------------------------


@dataclass
class SizeReport:
    n: int
    posets: int
    embedded: int
    failures: list[str]
    max_stage: int
    symbolic_images: int


@dataclass
class UniversalityReport:
    sizes: list[SizeReport]
    stage_sizes: list[int]
    tower_complete: bool
    conjectured: list[int]  # 2**n, reported next to the measured sizes, never asserted
    budget_report: str | None = None

    @property
    def all_embedded(self) -> bool:
        return all(not r.failures for r in self.sizes)


def universality_report(
    max_size: int,
    budget: int | None = None,
    max_materialized: int | None = None,
    prefix: str = DEFAULT_SEED_NAME,
) -> UniversalityReport:
    from .generate import labeled_posets

    budget = default_budget() if budget is None else budget
    levels = max_size if max_materialized is None else min(max_size, max_materialized)
    tower = phi_tower(levels, budget, prefix)
    rows = []
    for n in range(max_size + 1):
        total = ok = sym = 0
        worst = 0
        failures = []
        for target in labeled_posets(n):
            total += 1
            try:
                emb = embed_via_psi(target, None, budget, max_materialized, prefix)
            except OrdAlgError as exc:
                failures.append(f"{target!r}: {exc}")
                continue
            ok += 1
            worst = max(worst, emb.max_stage)
            sym += sum(1 for h in emb.image.values() if h.symbolic)
        rows.append(SizeReport(n, total, ok, failures, worst, sym))
    return UniversalityReport(
        rows, tower.sizes, tower.complete, [2**n for n in range(max_size + 1)], tower.budget_report
    )


def embedding_as_names(emb: PsiEmbedding) -> dict[str, str]:
    return {k: v.name for k, v in emb.image.items()}
