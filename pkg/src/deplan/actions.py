"""Event models (actions), applicability, and product update."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .logic import (Atom, EpistemicModel, EpistemicState, Formula, ModelError,
                    holds, modal_depth, satisfies)


class UpdateError(ValueError):
    """Raised when updating with a non-applicable action."""


@dataclass(frozen=True)
class Event:
    """One perspective on an action: when it can happen and what it changes.

    ``post`` is sparse: atoms it does not mention keep their truth value.
    Identity entries (post of p is p itself) are dropped at construction.
    """

    pre: Formula
    post: tuple[tuple[str, Formula], ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple((p, f) for p, f in dict(self.post).items() if f != Atom(p))
        object.__setattr__(self, "post", cleaned)


class Action:
    """Pointed event model: events, per-agent event accessibility, designated
    event, and the cached maximum modal depth over all pre/postconditions."""

    __slots__ = ("name", "events", "relations", "designated", "agents", "md")

    def __init__(self, name: str, events: Iterable[Event],
                 relations: Mapping[str, Iterable[tuple[int, int]]],
                 designated: int):
        self.name = name
        self.events = tuple(events)
        if not self.events:
            raise ModelError(f"action {name}: needs at least one event")
        m = len(self.events)
        if not (0 <= designated < m):
            raise ModelError(f"action {name}: designated event out of range")
        self.designated = designated
        self.agents = tuple(relations)
        self.relations = {a: frozenset((int(u), int(v)) for u, v in pairs)
                          for a, pairs in relations.items()}
        for a, r in self.relations.items():
            for u, v in r:
                if not (0 <= u < m and 0 <= v < m):
                    raise ModelError(f"action {name}: event relation of {a} out of range")
        depths = [modal_depth(e.pre) for e in self.events]
        depths += [modal_depth(f) for e in self.events for _, f in e.post]
        self.md = max(depths)

    def __repr__(self) -> str:
        return f"Action({self.name!r}, {len(self.events)} events, md={self.md})"

    def _key(self):
        return (self.name, self.events,
                tuple(sorted((a, tuple(sorted(r))) for a, r in self.relations.items())),
                self.designated)

    def __eq__(self, other) -> bool:
        return isinstance(other, Action) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())


def public_announcement(name: str, phi: Formula, agents: Iterable[str]) -> Action:
    """Single-event public announcement of ``phi``."""
    return Action(name, [Event(pre=phi)],
                  {a: {(0, 0)} for a in agents}, designated=0)


def applicable(s: EpistemicState, a: Action) -> bool:
    """Model-check the designated event's precondition at the designated world."""
    return satisfies(s, a.events[a.designated].pre)


def product_update(s: EpistemicState, a: Action) -> EpistemicState:
    """Synchronous composition of state and action.

    New worlds are the (world, event) pairs whose precondition holds; labels
    come from the postconditions evaluated against the pre-update state.
    World indices are assigned in (world-major, event-minor) order. The
    result is not contracted; that is the planner's job.
    """
    if not applicable(s, a):
        raise UpdateError(f"action {a.name} not applicable")
    model = s.model
    pairs: list[tuple[int, int]] = []
    for w in range(model.num_worlds):
        for e, event in enumerate(a.events):
            if holds(model, w, event.pre):
                pairs.append((w, e))
    index = {pair: k for k, pair in enumerate(pairs)}

    labels = []
    for w, e in pairs:
        post = dict(a.events[e].post)
        lab = 0
        for k, atom in enumerate(model.atoms):
            phi = post.get(atom)
            if phi is None:
                bit = model.labels[w] >> k & 1
            else:
                bit = holds(model, w, phi)
            if bit:
                lab |= 1 << k
        labels.append(lab)

    relations: list[set[tuple[int, int]]] = []
    for i, agent in enumerate(model.agents):
        q = a.relations.get(agent, frozenset())
        edges: set[tuple[int, int]] = set()
        for u, v in model.relations[i]:
            for e, f in q:
                src = index.get((u, e))
                dst = index.get((v, f))
                if src is not None and dst is not None:
                    edges.add((src, dst))
        relations.append(edges)

    new_model = EpistemicModel(model.atoms, model.agents, labels, relations)
    return EpistemicState(new_model, index[(s.designated, a.designated)])
