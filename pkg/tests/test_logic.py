import random

import pytest

from deplan.logic import (Atom, And, Believes, BOTTOM, EpistemicModel,
                          EpistemicState, Implies, ModelError, Not, Or,
                          Possible, TOP, depth_map, holds, modal_depth,
                          normalize, restrict, restrict_with_map, satisfies)
from deplan.contraction import naive_h_bisimilar, disjoint_union
from deplan.domains import gen_consecutive_numbers

from .corpus import chain_state, figure_model, random_formula, random_model


def test_modal_depth_base_cases():
    assert modal_depth(Atom("has_a_3")) == 0
    assert modal_depth(Believes("b", Atom("has_a_3"))) == 1
    phi = And((Believes("a", Not(Believes("b", Atom("p")))), Atom("q")))
    assert modal_depth(phi) == 2


def test_modal_depth_sugar_preserved_by_normalize():
    phi = Possible("a", Implies(Atom("p"), Or((Atom("q"), BOTTOM))))
    assert modal_depth(phi) == modal_depth(normalize(phi)) == 1


def test_satisfies_consecutive_numbers():
    s, _ = gen_consecutive_numbers(5, 3, 4)
    assert satisfies(s, Believes("a", Atom("has_a_3")))
    assert not satisfies(s, Believes("a", Atom("has_b_4")))
    assert satisfies(s, TOP)


def test_satisfies_unknown_atom_and_agent():
    s = chain_state(1)
    assert not satisfies(s, Atom("nope"))
    # an agent outside the model has an empty relation: vacuous belief
    assert satisfies(s, Believes("ghost", BOTTOM))
    assert not satisfies(s, Possible("ghost", TOP))


def test_normalization_invariance_random():
    rng = random.Random(7)
    for _ in range(200):
        s = random_model(rng)
        phi = random_formula(rng, list(s.model.atoms), list(s.model.agents), 2)
        assert satisfies(s, phi) == satisfies(s, normalize(phi))


def test_depth_map_singleton_and_chain():
    s = chain_state(2)
    assert depth_map(s) == {0: 0, 1: 1, 2: 2}
    single = EpistemicState(EpistemicModel(["p"], ["a"], [1], {"a": set()}), 0)
    assert depth_map(single) == {0: 0}


def test_depth_map_figure_model():
    d = depth_map(figure_model())
    assert d == {0: 0, 1: 1, 2: 1, 3: 2, 4: 2}


def test_depth_map_designated_always_zero():
    rng = random.Random(11)
    for _ in range(50):
        s = random_model(rng)
        assert depth_map(s)[s.designated] == 0


def test_restrict_chain():
    s = chain_state(3)
    r = restrict(s, 1)
    assert r.num_worlds == 2
    assert r.designated == 0


def test_restrict_zero_single_world():
    rng = random.Random(3)
    for _ in range(50):
        s = random_model(rng)
        assert restrict(s, 0).num_worlds == 1


def test_restrict_drops_unreachable():
    model = EpistemicModel(["p"], ["a"], [1, 1, 0], {"a": {(0, 1)}})
    s = EpistemicState(model, 0)
    r, old_to_new = restrict_with_map(s, 5)
    assert r.num_worlds == 2
    assert 2 not in old_to_new


def test_restrict_preserves_bounded_bisimilarity():
    # pointing the restriction at w is b(w)-bisimilar to pointing the
    # original at w, checked with the brute-force oracle
    rng = random.Random(23)
    for _ in range(40):
        s = random_model(rng, max_worlds=6)
        b = rng.randint(0, 3)
        r, old_to_new = restrict_with_map(s, b)
        dm = depth_map(s)
        for old, new in old_to_new.items():
            bw = b - dm[old]
            union, _, _ = disjoint_union(EpistemicState(s.model, old),
                                         EpistemicState(r.model, new))
            assert naive_h_bisimilar(union, old, s.num_worlds + new, bw)


def test_model_validation_errors():
    with pytest.raises(ModelError):
        EpistemicModel(["p"], ["a"], [], {"a": set()})
    with pytest.raises(ModelError):
        EpistemicModel(["p"], ["a"], [2], {"a": set()})
    with pytest.raises(ModelError):
        EpistemicModel(["p"], ["a"], [1], {"a": {(0, 1)}})
    with pytest.raises(ModelError):
        EpistemicModel(["p", "p"], ["a"], [1], {"a": set()})
    with pytest.raises(ModelError):
        EpistemicState(EpistemicModel(["p"], ["a"], [1], {"a": set()}), 1)


def test_holds_respects_edge_direction():
    model = EpistemicModel(["p"], ["a"], [0, 1], {"a": {(0, 1)}})
    assert holds(model, 0, Believes("a", Atom("p")))
    assert holds(model, 1, Believes("a", BOTTOM))  # no outgoing edges
