import pytest

import oracles
from ordalg import universal
from ordalg.errors import BudgetExceededError, UsageError
from ordalg.gaps import gap_order
from ordalg.generate import labeled_posets
from ordalg.poset import Poset
from ordalg.relation import isomorphism
from ordalg.universal import (
    check_embedding,
    embed_via_psi,
    embedding_as_names,
    find_embedding,
    materialize,
    min_gap_count,
    phi_step,
    phi_tower,
    seed_stage,
    universality_report,
)


def test_tower_sizes_and_names():
    tower = phi_tower(2)
    assert tower.sizes == [1, 4, 22] and tower.complete
    one = tower.stages[1]
    assert one.new_elements() == ["a1_0", "a1_1", "a1_2"]
    assert str(one.provenance["a1_1"]) == "({}, {a})"
    assert one.poset.sorted_pairs() == [("a", "a1_2"), ("a1_1", "a"), ("a1_1", "a1_2")]
    for st in tower.stages:
        p = st.poset
        assert oracles.is_order(p.elements, p.pairs)


def test_stage_sizes_follow_gap_oracle():
    tower = phi_tower(2)
    for prev, nxt in zip(tower.stages[:2], tower.stages[1:2]):
        p = prev.poset
        assert nxt.size == len(p) + len(oracles.gaps(p.elements, p.pairs))
    p = tower.stages[1].poset
    assert tower.stages[2].size == len(p) + oracles.gap_count_by_antichains(p.elements, p.pairs)
    p = tower.stages[2].poset
    assert tower.stages[2].size + oracles.gap_count_by_antichains(p.elements, p.pairs) == 6984


def test_new_elements_carry_the_gap_order():
    for level in (1, 2):
        prev, st = materialize(level - 1), materialize(level)
        new = st.poset.induced(st.new_elements())
        go = gap_order(prev.poset, cap=len(prev.poset))
        assert isomorphism(new, go) is not None


def test_empty_seedless_step_and_custom_prefix():
    empty = universal.PhiStage(0, Poset(""), {}, {})
    assert phi_step(empty, 10).size == 1
    assert phi_tower(1, prefix="s").stages[1].new_elements() == ["s1_0", "s1_1", "s1_2"]
    assert seed_stage("z").poset.elements == ("z",)


def test_budget_reporting():
    tower = phi_tower(3, element_budget=100)
    assert not tower.complete and tower.sizes == [1, 4, 22]
    assert tower.next_size_at_least >= 22 + min_gap_count(tower.stages[2].poset) > 100
    with pytest.raises(BudgetExceededError):
        materialize(2, element_budget=10)
    with pytest.raises(UsageError):
        phi_tower(-1)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("ORDALG_BUDGET", "5")
    assert universal.default_budget() == 5
    assert not phi_tower(2).complete
    monkeypatch.setenv("ORDALG_BUDGET", "lots")
    with pytest.raises(UsageError):
        universal.default_budget()


def test_find_embedding_examples():
    host = Poset.chain("abc")
    image = find_embedding(Poset.chain("xy"), host)
    assert image == {"x": "a", "y": "b"} and check_embedding(Poset.chain("xy"), host, image)
    assert find_embedding(Poset("xy"), host) is None
    assert find_embedding(Poset(""), host) == {}


def test_small_posets_embed_in_materialized_stages():
    for n in range(3):
        host = materialize(n).poset
        for target in labeled_posets(n):
            image = find_embedding(target, host)
            assert image is not None and check_embedding(target, host, image)


def test_psi_examples():
    chain = Poset.chain("xyz")
    emb = embed_via_psi(chain, well_order=["y", "x", "z"])
    assert embedding_as_names(emb) == {"y": "a", "x": "a1_1", "z": "a1_2"}
    v = Poset.generated("abc", [("a", "b"), ("a", "c")])
    emb = embed_via_psi(v)
    assert embedding_as_names(emb) == {"a": "a", "b": "a1_2", "c": "a2_12"}
    emb = embed_via_psi(v, max_materialized=1)
    assert emb.image["c"].symbolic and emb.image["c"].name.startswith("a2[")
    assert not emb.image["b"].symbolic
    with pytest.raises(UsageError):
        embed_via_psi(v, well_order=["a", "b"])


def test_psi_images_materialize_consistently():
    for target in labeled_posets(3):
        emb = embed_via_psi(target)
        host = materialize(emb.max_stage).poset
        assert check_embedding(target, host, embedding_as_names(emb))


def test_psi_symbolic_agrees_with_materialized():
    for target in labeled_posets(3):
        sym = embed_via_psi(target, max_materialized=1)
        full = embed_via_psi(target)
        for x, h in sym.image.items():
            if not h.symbolic:
                assert full.image[x] == h
            else:
                st = materialize(2)
                assert st.spawned[materialize(1).poset.mask(h.gap.initial), materialize(1).poset.mask(h.gap.final)] == full.image[x].name


def test_universality_report():
    rep = universality_report(3, max_materialized=2)
    assert [r.posets for r in rep.sizes] == [1, 1, 3, 19]
    assert rep.all_embedded and rep.conjectured == [1, 2, 4, 8]
