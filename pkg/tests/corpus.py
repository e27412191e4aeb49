"""Shared builders for the test suites: seeded random models/actions/formulas
and the handful of hand-built fixture states."""
from __future__ import annotations

import random

from deplan.actions import Action, Event
from deplan.logic import (Atom, Believes, EpistemicModel, EpistemicState,
                          Formula, Not, Or, TOP, conj)


def random_model(rng: random.Random, max_worlds: int = 8, num_agents: int = 2,
                 num_atoms: int = 2, edge_p: float = 0.3) -> EpistemicState:
    n = rng.randint(1, max_worlds)
    atoms = [f"p{k}" for k in range(num_atoms)]
    agents = [f"ag{k}" for k in range(num_agents)]
    labels = [rng.randrange(1 << num_atoms) for _ in range(n)]
    relations = []
    for _ in agents:
        relations.append({(u, v) for u in range(n) for v in range(n)
                          if rng.random() < edge_p})
    model = EpistemicModel(atoms, agents, labels, relations)
    return EpistemicState(model, rng.randrange(n))


def rename_worlds(state: EpistemicState, perm: list[int]) -> EpistemicState:
    """Re-index worlds by perm (perm[old] = new); same state up to naming."""
    model = state.model
    n = model.num_worlds
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    labels = [model.labels[inv[new]] for new in range(n)]
    relations = [{(perm[u], perm[v]) for u, v in r} for r in model.relations]
    renamed = EpistemicModel(model.atoms, model.agents, labels, relations)
    return EpistemicState(renamed, perm[state.designated])


def random_renaming(rng: random.Random, state: EpistemicState) -> EpistemicState:
    perm = list(range(state.num_worlds))
    rng.shuffle(perm)
    return rename_worlds(state, perm)


def random_formula(rng: random.Random, atoms: list[str], agents: list[str],
                   max_md: int, depth: int = 3) -> Formula:
    choices = ["atom", "not", "and", "or"]
    if max_md > 0:
        choices += ["believes", "believes"]
    kind = rng.choice(choices) if depth > 0 else "atom"
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "not":
        return Not(random_formula(rng, atoms, agents, max_md, depth - 1))
    if kind == "and":
        return conj([random_formula(rng, atoms, agents, max_md, depth - 1)
                     for _ in range(rng.randint(1, 2))])
    if kind == "or":
        return Or(tuple(random_formula(rng, atoms, agents, max_md, depth - 1)
                        for _ in range(2)))
    return Believes(rng.choice(agents),
                    random_formula(rng, atoms, agents, max_md - 1, depth - 1))


def random_action(rng: random.Random, state: EpistemicState,
                  max_md: int = 2) -> Action:
    """A small random event model that is applicable in ``state`` (the
    designated event's precondition is forced to TOP)."""
    atoms = list(state.model.atoms)
    agents = list(state.model.agents)
    m = rng.randint(1, 3)
    events = []
    for k in range(m):
        pre = TOP if k == 0 else random_formula(rng, atoms, agents, max_md, 2)
        post = []
        for atom in atoms:
            if rng.random() < 0.2:
                post.append((atom, random_formula(rng, atoms, agents, max_md, 1)))
        events.append(Event(pre, tuple(post)))
    relations = {}
    for a in agents:
        relations[a] = {(u, v) for u in range(m) for v in range(m)
                        if rng.random() < 0.5}
    return Action("rand", events, relations, designated=0)


def chain_state(length: int, label: int = 1) -> EpistemicState:
    """length+1 worlds w0 -> w1 -> ... all carrying atom p."""
    n = length + 1
    model = EpistemicModel(["p"], ["a"], [label] * n,
                           {"a": {(k, k + 1) for k in range(length)}})
    return EpistemicState(model, 0)


def loop_state(label: int = 1) -> EpistemicState:
    model = EpistemicModel(["p"], ["a"], [label], {"a": {(0, 0)}})
    return EpistemicState(model, 0)


def figure_model() -> EpistemicState:
    """Five-world single-agent state whose rooted 3-contraction depends on the
    world order: the designated world has two depth-1 successors that a
    depth-2 world reaches both of, so the edge choice there is arbitrary.

    Worlds: 0 = designated {p}; 1, 2 = {q}; 3 = {p,q}; 4 = {}.
    Edges: 0->1, 0->2, 1->3, 2->4, 3->1, 3->2.
    """
    model = EpistemicModel(
        ["p", "q"], ["a"], [0b01, 0b10, 0b10, 0b11, 0b00],
        {"a": {(0, 1), (0, 2), (1, 3), (2, 4), (3, 1), (3, 2)}})
    return EpistemicState(model, 0)
