import random

import pytest

from deplan.actions import (Action, Event, UpdateError, applicable,
                            product_update, public_announcement)
from deplan.contraction import b_bisimilar, bisimilar, standard_contraction
from deplan.logic import (Atom, BOTTOM, Believes, EpistemicModel,
                          EpistemicState, Not, TOP, satisfies)
from deplan.signatures import canonical_contraction
from deplan.domains import gen_consecutive_numbers

from .corpus import random_action, random_model


def test_event_drops_identity_postconditions():
    e = Event(TOP, (("p", Atom("p")), ("q", TOP)))
    assert e.post == (("q", TOP),)


def test_action_md_is_max_over_formulas():
    a = Action("t", [Event(Believes("a", Atom("p"))),
                     Event(TOP, (("p", Believes("a", Believes("a", Atom("p")))),))],
               {"a": {(0, 0)}}, designated=0)
    assert a.md == 2


def test_applicability():
    s, ann = gen_consecutive_numbers(5, 3, 4)
    assert applicable(s, public_announcement("t", TOP, ["a", "b"]))
    assert applicable(s, ann)
    assert not applicable(s, public_announcement("f", BOTTOM, ["a", "b"]))


def test_update_with_top_announcement_is_isomorphic():
    rng = random.Random(3)
    for _ in range(20):
        s = random_model(rng)
        ann = public_announcement("t", TOP, list(s.model.agents))
        u = product_update(s, ann)
        assert u.num_worlds == s.num_worlds
        assert u.model.labels == s.model.labels
        assert u.model.relations == s.model.relations


def test_update_consecutive_numbers_removes_one_world():
    s, ann = gen_consecutive_numbers(5, 3, 4)
    u = product_update(s, ann)
    assert u.num_worlds == 4


def test_update_not_applicable_raises():
    s, _ = gen_consecutive_numbers(5, 3, 4)
    with pytest.raises(UpdateError):
        product_update(s, public_announcement("f", BOTTOM, ["a", "b"]))


def test_ontic_bottom_postcondition():
    model = EpistemicModel(["p"], ["a"], [1, 1], {"a": {(0, 1), (1, 0)}})
    s = EpistemicState(model, 0)
    a = Action("off", [Event(TOP, (("p", BOTTOM),))], {"a": {(0, 0)}}, 0)
    u = product_update(s, a)
    assert all(lab == 0 for lab in u.model.labels)


def test_postconditions_read_pre_update_state():
    # simultaneous swap of p and q must not see its own writes
    model = EpistemicModel(["p", "q"], ["a"], [0b01], {"a": {(0, 0)}})
    s = EpistemicState(model, 0)
    swap = Action("swap", [Event(TOP, (("p", Atom("q")), ("q", Atom("p"))))],
                  {"a": {(0, 0)}}, 0)
    u = product_update(s, swap)
    assert u.model.labels == (0b10,)
    again = product_update(u, swap)
    assert again.model.labels == (0b01,)


def test_bisim_preservation_random():
    rng = random.Random(101)
    done = 0
    while done < 100:
        s = random_model(rng)
        a = random_action(rng, s)
        sc = standard_contraction(s)
        assert applicable(sc, a)
        if bisimilar(product_update(s, a), product_update(sc, a)):
            done += 1
        else:
            raise AssertionError("bisimulation not preserved by update")


def test_bounded_preservation_random():
    rng = random.Random(103)
    for _ in range(100):
        s = random_model(rng)
        a = random_action(rng, s, max_md=2)
        b = rng.randint(a.md, 4)
        c = canonical_contraction(s, b)
        assert applicable(c, a)
        assert b_bisimilar(product_update(s, a), product_update(c, a),
                           b - a.md)


def test_world_pair_order_is_world_major():
    model = EpistemicModel(["p"], ["a"], [1, 0], {"a": {(0, 1)}})
    s = EpistemicState(model, 0)
    two = Action("t", [Event(TOP), Event(TOP)],
                 {"a": {(0, 0), (1, 1)}}, designated=1)
    u = product_update(s, two)
    # pairs (w0,e0), (w0,e1), (w1,e0), (w1,e1) in that order
    assert u.model.labels == (1, 1, 0, 0)
    assert u.designated == 1
