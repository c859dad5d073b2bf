import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ordalg.errors import CycleError, NotAnOrderError, NotTransitiveError
from ordalg.generate import labeled_posets, random_poset, random_subset
from ordalg.poset import (
    Poset,
    bounds,
    closure,
    cofinal,
    extremes,
    is_ramified,
    lex_product,
    section_predicates,
    subset_relations,
)


@st.composite
def posets(draw, max_size=6):
    n = draw(st.integers(0, max_size))
    seed = draw(st.integers(0, 10**6))
    return random_poset(random.Random(seed), n, draw(st.sampled_from([0.15, 0.3, 0.5])))


def test_validation():
    with pytest.raises(NotAnOrderError):
        Poset("a", [("a", "a")])
    with pytest.raises(NotTransitiveError):
        Poset("abc", [("a", "b"), ("b", "c")])
    with pytest.raises(CycleError) as err:
        Poset.generated("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    assert err.value.cycle == ["a", "b", "c", "a"]


def test_extremes_examples(diamond):
    ex = extremes(diamond)
    assert ex.maxima == {"d"} and ex.minima == {"a"} and ex.supremum == "d" and ex.infimum == "a"
    ex = extremes(Poset("xy"))
    assert ex.maxima == {"x", "y"} and ex.supremum is None
    ex = extremes(Poset(""))
    assert not ex.maxima and not ex.minima and ex.supremum is None and ex.infimum is None


def test_lex_product_examples():
    prod = lex_product(Poset.chain("ab"), Poset.chain("xy"))
    assert prod.is_chain_mask(prod.full_mask) and len(prod) == 4
    prod = lex_product(Poset("xy"), Poset.chain("ab"))
    assert prod.sorted_pairs() == [("x__a", "x__b"), ("y__a", "y__b")]
    assert len(lex_product(Poset.chain("ab"), Poset(""))) == 0


def test_bounds_and_closure_examples(diamond):
    chain = Poset.chain("abc")
    assert bounds(chain, {"a"}, "upper") == {"b", "c"}
    assert bounds(diamond, {"b", "c"}, "upper") == {"d"}
    assert bounds(diamond, {"b", "c"}, "lower") == {"a"}
    assert bounds(chain, set(), "upper") == set(chain.elements) == bounds(chain, set(), "lower")
    assert closure(chain, {"b"}, "initial") == {"a", "b"}
    assert closure(chain, set(), "initial") == set()
    assert closure(diamond, {"d"}, "initial") == set("abcd")
    assert closure(diamond, {"b", "c"}, "segment") == {"b", "c"}


def test_section_predicates_examples(diamond):
    chain = Poset.chain("abc")
    assert not section_predicates(chain, {"a", "c"}).is_interval
    assert section_predicates(diamond, {"b", "c"}).is_interval
    assert section_predicates(diamond, closure(diamond, {"b"}, "initial")).is_initial


def test_ramified_examples(diamond):
    tree = Poset.generated("rabxy", [("r", "a"), ("r", "b"), ("a", "x"), ("a", "y")])
    assert is_ramified(tree)
    assert not is_ramified(diamond)
    assert is_ramified(Poset("xyz"))


def test_cofinal_examples():
    chain = Poset.chain("abc")
    assert cofinal(chain, {"c"}, {"b", "c"})
    assert cofinal(chain, {"a", "b"}, {"a", "b"})
    assert not cofinal(Poset("xy"), {"x"}, {"y"})
    assert cofinal(chain, {"a"}, {"a", "b"}, side="initial")


def test_subset_relation_examples():
    assert subset_relations(Poset.chain("ab"), {"a"}, {"b"}).finally_superior
    chain = Poset.chain("abc")
    assert not subset_relations(chain, {"a"}, {"a", "b"}).same_majorant
    assert subset_relations(chain, {"a", "b"}, {"b"}).same_majorant
    assert subset_relations(chain, {"a", "c"}, {"a", "c"}).envelops_superiorly


@given(posets(), st.data())
def test_identities(p, data):
    els = p.elements
    pick = st.sets(st.sampled_from(els)) if els else st.just(set())
    a, b = data.draw(pick), data.draw(pick)
    up, low = bounds(p, a, "upper"), bounds(p, a, "lower")
    assert up == {x for x in els if all((y, x) in p.pairs for y in a)}
    assert oracles.pointwise_less(p.pairs, low, a) and oracles.pointwise_less(p.pairs, a, up)
    assert bounds(p, a | b, "upper") <= up and bounds(p, a | b, "lower") <= low
    assert bounds(p, bounds(p, up, "lower"), "upper") == up
    assert bounds(p, bounds(p, low, "upper"), "lower") == low
    assert section_predicates(p, up).is_final and section_predicates(p, low).is_initial
    down_a = closure(p, a, "initial")
    assert bounds(p, down_a, "upper") == up
    assert closure(p, a, "initial") <= closure(p, a | b, "initial")
    if closure(p, b, "initial") == down_a:
        assert bounds(p, b, "upper") == up
    assert cofinal(p, a, b) == (down_a == closure(p, b, "initial"))


@given(posets(max_size=5))
def test_sections_closed_under_union_and_intersection(p):
    downs = [s for s in oracles.subsets(p.elements) if section_predicates(p, s).is_initial]
    for x in downs:
        for y in downs:
            assert section_predicates(p, x | y).is_initial and section_predicates(p, x & y).is_initial
    for a in oracles.subsets(p.elements)[:16]:
        least = min((s for s in downs if a <= s), key=len)
        assert closure(p, a, "initial") == least


@given(posets(max_size=4))
def test_majorant_classes_and_finally_superior(p):
    subs = oracles.subsets(p.elements)
    by_majorant = {}
    for s in subs:
        by_majorant.setdefault(bounds(p, s, "upper"), []).append(s)
    for maj, members in by_majorant.items():
        union = frozenset().union(*members)
        assert bounds(p, union, "upper") == maj
    for a in subs:
        assert not subset_relations(p, a, a).finally_superior
        for b in subs:
            if not subset_relations(p, a, b).finally_superior:
                continue
            for c in subs:
                if subset_relations(p, b, c).finally_superior:
                    assert subset_relations(p, a, c).finally_superior


def test_labeled_counts_match_relation_oracle():
    for n in range(4):
        ours = {frozenset(p.pairs) for p in labeled_posets(n, tuple(range(n)) and None)}
        names = "abc"[:n]
        theirs = {frozenset((names[i], names[j]) for i, j in rel) for rel in oracles.labeled_orders(n)}
        assert ours == theirs
    assert [len(labeled_posets(n)) for n in range(6)] == [1, 1, 3, 19, 219, 4231]


def test_random_subset_is_subset():
    rng = random.Random(0)
    p = random_poset(rng, 6)
    assert random_subset(rng, p.elements) <= set(p.elements)
