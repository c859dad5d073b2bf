import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ordalg.deduction import (
    StructureTaxon,
    bases,
    classify,
    close,
    complete_lines_general,
    confuse,
    confusion_is_order,
    deductive_closure,
    find_cycle,
    is_base,
)
from ordalg.errors import CapExceededError, NotAnOrderError, NotTransitiveError
from ordalg.generate import labeled_posets, random_closed_structure
from ordalg.poset import Poset
from ordalg.relation import RelationStructure

from test_relation import structures


def test_closure_examples():
    closed, trace = deductive_closure(RelationStructure("abc", [("a", "b"), ("b", "c")]))
    assert closed.has("a", "c") and trace.stage_count == 1
    closed, trace = deductive_closure(RelationStructure("abcd", [("a", "b"), ("b", "c"), ("c", "d")]))
    assert trace.stages[1] - trace.stages[0] == {("a", "c"), ("b", "d")}
    assert trace.stages[2] - trace.stages[1] == {("a", "d")}
    assert trace.stage_count == 2
    assert deductive_closure(closed)[1].stage_count == 0


def test_classify_examples():
    assert classify(Poset.chain("abc")) is StructureTaxon.TOTAL_ORDER
    assert classify(Poset("ab")) is StructureTaxon.PARTIAL_ORDER
    assert classify(RelationStructure("ab", [("a", "a"), ("b", "b")])) is StructureTaxon.CLASSIFICATION
    assert classify(RelationStructure("ab", [("a", "a"), ("a", "b")])) is StructureTaxon.MIXED
    refl_chain = RelationStructure("ab", [("a", "a"), ("b", "b"), ("a", "b")])
    assert classify(refl_chain) is StructureTaxon.REFLEXIVE_ASYMMETRIC_NO_SYM
    with_sym = RelationStructure("abc", [(x, x) for x in "abc"] + [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")])
    assert classify(with_sym) is StructureTaxon.REFLEXIVE_ASYMMETRIC_WITH_SYM
    with pytest.raises(NotTransitiveError) as err:
        classify(RelationStructure("abc", [("a", "b"), ("b", "c")]))
    assert err.value.witness == ("a", "b", "c")


def test_is_base_examples():
    chain = Poset.chain("abc")
    assert is_base(RelationStructure("abc", [("a", "b"), ("b", "c")]), chain)
    assert not is_base(RelationStructure("abc", [("a", "c")]), chain)
    assert is_base(chain, chain)


def test_bases_examples():
    chain = Poset.chain("abc")
    assert bases(chain, "absolute") == [RelationStructure("abc", [("a", "b"), ("b", "c")])]
    two_cycle = RelationStructure("ab", [("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")])
    irr = bases(two_cycle, "irreducible")
    assert RelationStructure("ab", [("a", "b"), ("b", "a")]) in irr
    assert len(irr) == 1  # the two loops follow from the 2-cycle
    full3 = close(RelationStructure("abc", [("a", "b"), ("b", "c"), ("c", "a")]))
    assert len(bases(full3, "irreducible")) == 5
    assert bases(full3, "absolute") == []
    assert bases(RelationStructure("ab"), "absolute") == [RelationStructure("ab")]
    every = bases(chain, "all")
    assert len(every) == 2
    with pytest.raises(CapExceededError):
        bases(chain, "all", cap=2)


def test_irreducible_bases_match_exhaustive_search():
    rng = random.Random(7)
    for _ in range(60):
        s = random_closed_structure(rng, rng.randint(1, 4), 0.3)
        if s.pair_count > 12:
            continue
        everything = [frozenset(b.pairs) for b in bases(s, "all")]
        minimal = {b for b in everything if not any(c < b for c in everything)}
        assert {frozenset(b.pairs) for b in bases(s, "irreducible")} == minimal


def test_confuse_examples():
    merged = confuse([Poset.chain("ab"), Poset.chain("bc")])
    assert merged == Poset.chain("abc")
    merged = confuse([Poset.chain("ab"), Poset.chain("xy")])
    assert merged.sorted_pairs() == [("a", "b"), ("x", "y")]
    merged = confuse([Poset.chain("ab"), Poset.chain("ba")])
    assert merged.pairs == {("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")}


def test_confusion_is_order_examples():
    assert confusion_is_order([Poset.chain("ab"), Poset.chain("bc")]) == (True, None)
    assert confusion_is_order([Poset.chain("ab"), Poset.chain("ba")]) == (False, ["a", "b", "a"])
    ok, cycle = confusion_is_order([Poset("abcd", [("a", "b"), ("c", "d")]), Poset.chain("bc"), Poset.chain("da")])
    assert not ok and cycle == ["a", "b", "c", "d", "a"]
    with pytest.raises(NotAnOrderError):
        confusion_is_order([RelationStructure("a", [("a", "a")])])


def test_find_cycle_prefers_shortest():
    s = RelationStructure("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("c", "b")])
    assert find_cycle(s) == ["b", "c", "b"]
    assert find_cycle(RelationStructure("ab", [("b", "b")])) == ["b", "b"]


@given(structures(max_size=5), structures(max_size=5))
def test_closure_laws(s, t):
    c = close(s)
    assert c.pairs >= s.pairs
    assert close(c) == c
    assert c.pairs == oracles.close(s.pairs)
    if set(s.elements) == set(t.elements):
        union = RelationStructure(s.elements, s.pairs | t.pairs)
        assert close(union).pairs >= c.pairs


@given(structures(max_size=5))
def test_cycle_criterion_matches_oracle(s):
    irreflexive_pairs = [(a, b) for a, b in s.pairs if a != b]
    parts = [Poset.chain([a, b]) for a, b in irreflexive_pairs]
    if not parts:
        return
    ok, cycle = confusion_is_order(parts)
    assert ok == (not oracles.has_cycle(irreflexive_pairs))
    if cycle:
        assert all((x, y) in set(irreflexive_pairs) for x, y in zip(cycle, cycle[1:]))


def test_symmetric_partner_properties_on_random_closed_structures():
    rng = random.Random(11)
    for _ in range(300):
        s = random_closed_structure(rng, rng.randint(1, 6), rng.choice([0.1, 0.2, 0.35]))
        els = s.elements
        for a in els:
            for b in els:
                if s.has(a, b) and s.has(b, a):
                    assert s.has(a, a) and s.has(b, b)
                for c in els:
                    if s.has(a, c) and s.has(c, a) and s.has(b, c) and s.has(c, b):
                        assert s.has(a, b) and s.has(b, a)
        # every complete line holds the symmetric partners of its members
        for line in complete_lines_general(s):
            for m in line:
                partners = {x for x in els if x != m and s.has(m, x) and s.has(x, m)}
                assert partners <= line


def test_absolute_base_of_orders_is_cover_relation():
    for n in range(5):
        for p in labeled_posets(n):
            cov = RelationStructure(p.elements, p.covers())
            assert bases(p, "absolute") == [cov]
            assert oracles.essential_pairs(p.pairs) == set(p.covers()) == oracles.covers(p.pairs)
            assert is_base(cov, p)
