import pytest
from hypothesis import given

import oracles
from ordalg.errors import InvalidTransversalError, NotAChainError, NotAHalfRayError
from ordalg.gaps import Gap, disjunctive_chain, enumerate_gaps
from ordalg.generate import labeled_posets
from ordalg.lines import (
    CompleteLine,
    DisjunctiveGapOfLine,
    Point,
    complete_lines,
    complete_transversals,
    crossing_index,
    half_ray,
    line_passes_gap,
    problem13_search,
    transversal_crosses_line,
    transversal_partition,
)
from ordalg.poset import Poset, bounds, extremes

from test_poset import posets


def test_line_and_transversal_examples(diamond, n_poset):
    assert [l.chain for l in complete_lines(diamond)] == [("a", "b", "d"), ("a", "c", "d")]
    assert [l.chain for l in complete_lines(n_poset)] == [("a", "c"), ("b", "c"), ("b", "d")]
    assert [sorted(t.antichain) for t in complete_transversals(n_poset)] == [["a", "b"], ["a", "d"], ["c", "d"]]
    assert [sorted(t.antichain) for t in complete_transversals(diamond)] == [["a"], ["d"], ["b", "c"]]
    assert complete_lines(Poset("")) == [] and complete_transversals(Poset("")) == []


def test_half_ray_and_crossing_examples(diamond):
    assert half_ray(diamond, ["a"])
    assert not half_ray(diamond, ["b"])
    assert half_ray(diamond, ["d"], side="final")
    assert crossing_index(diamond, ["a"]) == 2
    assert crossing_index(Poset.chain("abc"), ["a"]) == 1
    assert crossing_index(diamond, ["a", "b", "d"]) == 0
    with pytest.raises(NotAHalfRayError):
        crossing_index(diamond, ["b"])
    with pytest.raises(NotAChainError):
        half_ray(diamond, ["b", "c"])


def test_passes_examples(diamond):
    r = line_passes_gap(diamond, CompleteLine(("a", "b", "d")), Gap.of("ac", "d"))
    assert not r.passes and r.criterion_agrees
    r = line_passes_gap(diamond, ["a", "b", "d"], Gap.of("abc", "d"))
    assert r.passes and r.criterion_agrees
    with pytest.raises(NotAChainError):
        line_passes_gap(diamond, ["a", "b"], Gap.of())


def test_partition_and_crossing_examples(diamond):
    part = transversal_partition(diamond, ["b", "c"])
    assert part.class0 == {"b", "c"} and part.class1 == {"a"} and part.class2 == {"d"}
    fence = Poset.generated("abcd", [("a", "c"), ("b", "c"), ("b", "d")])
    assert transversal_crosses_line(fence, ["a", "d"], ["b", "c"]) == DisjunctiveGapOfLine(("b",), ("c",))
    assert transversal_crosses_line(diamond, ["b", "c"], ["a", "b", "d"]) == Point("b")
    with pytest.raises(InvalidTransversalError):
        transversal_partition(diamond, ["b"])
    assert problem13_search(diamond) and not problem13_search(fence)
    with pytest.raises(NotAChainError):
        transversal_crosses_line(Poset("ab"), ["a", "b"], ["a", "b"])


@given(posets(max_size=6))
def test_against_oracles(p):
    lines = {frozenset(l.chain) for l in complete_lines(p)}
    assert lines == oracles.maximal_chains(p.elements, p.pairs) - {frozenset()}
    ts = {t.antichain for t in complete_transversals(p)}
    assert ts == oracles.maximal_antichains(p.elements, p.pairs) - {frozenset()}
    for l in complete_lines(p):
        for t in ts:
            assert len(set(l.chain) & t) <= 1
    if p.elements:
        assert frozenset(extremes(p).maxima) in ts and frozenset(extremes(p).minima) in ts


@given(posets(max_size=6))
def test_crossing_index_counts_minimal_elements_above(p):
    for l in complete_lines(p):
        for k in range(1, len(l.chain) + 1):
            prefix = l.chain[:k]
            if half_ray(p, prefix):
                rest = bounds(p, set(prefix), "upper")
                minimal = {x for x in rest if not any((y, x) in p.pairs for y in rest)}
                assert crossing_index(p, prefix) == len(minimal)


@given(posets(max_size=6))
def test_trichotomy_and_crossing(p):
    for t in complete_transversals(p):
        part = transversal_partition(p, t)
        assert part.class0 | part.class1 | part.class2 == set(p.elements)
        assert not part.class1 & part.class2
        for z in set(p.elements) - t.antichain:
            below = any((z, x) in p.pairs for x in t.antichain)
            above = any((x, z) in p.pairs for x in t.antichain)
            assert below != above
        for l in complete_lines(p):
            hit = transversal_crosses_line(p, t, l)
            if isinstance(hit, DisjunctiveGapOfLine):
                assert hit.prefix + hit.suffix == l.chain


def test_lines_pass_every_disjunctive_gap():
    for n in range(5):
        for p in labeled_posets(n):
            for l in complete_lines(p):
                for g in disjunctive_chain(p):
                    assert line_passes_gap(p, l, g).passes
                for g in enumerate_gaps(p, cap=100):
                    assert line_passes_gap(p, l, g).criterion_agrees
