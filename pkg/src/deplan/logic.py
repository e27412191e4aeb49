"""Multi-agent epistemic logic: formula ASTs, pointed Kripke models, model checking.

Formulas are built from atoms, negation, conjunction and per-agent belief
modalities; disjunction, implication and the possibility modality are sugar
that :func:`normalize` removes. Models keep atoms and agents in declaration
order; those list positions are the fixed total orders everything downstream
(signature comparison, canonical encodings) relies on.

All types are immutable after construction; every function here is pure.
"""
from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class FormulaError(ValueError):
    """Raised for malformed formulas or formula documents."""


class ModelError(ValueError):
    """Raised for ill-formed models, states or task structures."""


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class Formula:
    """Base class; concrete variants are the frozen dataclasses below."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Or((self, other))

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class Implies(Formula):
    premise: Formula
    conclusion: Formula


@dataclass(frozen=True)
class Believes(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class Possible(Formula):
    agent: str
    sub: Formula


TOP = Top()
BOTTOM = Bottom()


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return TOP
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return BOTTOM
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


@functools.lru_cache(maxsize=None)
def modal_depth(phi: Formula) -> int:
    """Maximum nesting of belief/possibility modalities in ``phi``."""
    if isinstance(phi, (Atom, Top, Bottom)):
        return 0
    if isinstance(phi, Not):
        return modal_depth(phi.sub)
    if isinstance(phi, (And, Or)):
        return max((modal_depth(p) for p in phi.parts), default=0)
    if isinstance(phi, Implies):
        return max(modal_depth(phi.premise), modal_depth(phi.conclusion))
    if isinstance(phi, (Believes, Possible)):
        return 1 + modal_depth(phi.sub)
    raise FormulaError(f"unknown formula variant: {phi!r}")


@functools.lru_cache(maxsize=None)
def normalize(phi: Formula) -> Formula:
    """Rewrite ``phi`` to the {Atom, Not, And, Believes} core.

    Preserves both modal depth and truth in every model.
    """
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Top):
        return And(())
    if isinstance(phi, Bottom):
        return Not(And(()))
    if isinstance(phi, Not):
        return Not(normalize(phi.sub))
    if isinstance(phi, And):
        return And(tuple(normalize(p) for p in phi.parts))
    if isinstance(phi, Or):
        return Not(And(tuple(Not(normalize(p)) for p in phi.parts)))
    if isinstance(phi, Implies):
        return Not(And((normalize(phi.premise), Not(normalize(phi.conclusion)))))
    if isinstance(phi, Believes):
        return Believes(phi.agent, normalize(phi.sub))
    if isinstance(phi, Possible):
        return Not(Believes(phi.agent, Not(normalize(phi.sub))))
    raise FormulaError(f"unknown formula variant: {phi!r}")


def formula_atoms(phi: Formula) -> set[str]:
    if isinstance(phi, Atom):
        return {phi.name}
    if isinstance(phi, (Top, Bottom)):
        return set()
    if isinstance(phi, Not):
        return formula_atoms(phi.sub)
    if isinstance(phi, (And, Or)):
        out: set[str] = set()
        for p in phi.parts:
            out |= formula_atoms(p)
        return out
    if isinstance(phi, Implies):
        return formula_atoms(phi.premise) | formula_atoms(phi.conclusion)
    if isinstance(phi, (Believes, Possible)):
        return formula_atoms(phi.sub)
    raise FormulaError(f"unknown formula variant: {phi!r}")


def formula_agents(phi: Formula) -> set[str]:
    if isinstance(phi, (Atom, Top, Bottom)):
        return set()
    if isinstance(phi, Not):
        return formula_agents(phi.sub)
    if isinstance(phi, (And, Or)):
        out: set[str] = set()
        for p in phi.parts:
            out |= formula_agents(p)
        return out
    if isinstance(phi, Implies):
        return formula_agents(phi.premise) | formula_agents(phi.conclusion)
    if isinstance(phi, (Believes, Possible)):
        return {phi.agent} | formula_agents(phi.sub)
    raise FormulaError(f"unknown formula variant: {phi!r}")


# ---------------------------------------------------------------------------
# Models and states
# ---------------------------------------------------------------------------

class EpistemicModel:
    """A finite labeled Kripke model.

    Worlds are the integers ``0 .. num_worlds-1``. Labels are bitmasks over
    the atom list (bit ``k`` set means atom ``atoms[k]`` holds). Relations
    are per-agent sets of directed ``(source, target)`` world pairs.

    ``world_names`` optionally attaches a display/canonical name per world;
    canonical contractions use it to carry signature encodings (bytes).
    """

    __slots__ = ("atoms", "agents", "labels", "relations", "world_names",
                 "atom_index", "agent_index", "_succ", "_pred")

    def __init__(self, atoms: Sequence[str], agents: Sequence[str],
                 labels: Sequence[int],
                 relations: Mapping[str, Iterable[tuple[int, int]]] | Sequence[Iterable[tuple[int, int]]],
                 world_names: Sequence | None = None):
        self.atoms = tuple(atoms)
        self.agents = tuple(agents)
        self.labels = tuple(labels)
        if len(set(self.atoms)) != len(self.atoms):
            raise ModelError("duplicate atom names")
        if len(set(self.agents)) != len(self.agents):
            raise ModelError("duplicate agent names")
        if not self.labels:
            raise ModelError("model must have at least one world")
        n = len(self.labels)
        full = (1 << len(self.atoms)) - 1
        for w, lab in enumerate(self.labels):
            if lab & ~full:
                raise ModelError(f"label of world {w} mentions undeclared atoms")
        if isinstance(relations, Mapping):
            rel_seq = [relations.get(a, ()) for a in self.agents]
            unknown = set(relations) - set(self.agents)
            if unknown:
                raise ModelError(f"relations for undeclared agents: {sorted(unknown)}")
        else:
            rel_seq = list(relations)
            if len(rel_seq) != len(self.agents):
                raise ModelError("one relation per agent required")
        self.relations = tuple(frozenset((int(u), int(v)) for u, v in r) for r in rel_seq)
        for i, r in enumerate(self.relations):
            for u, v in r:
                if not (0 <= u < n and 0 <= v < n):
                    raise ModelError(
                        f"relation of agent {self.agents[i]} has endpoint outside 0..{n - 1}")
        if world_names is not None:
            world_names = tuple(world_names)
            if len(world_names) != n:
                raise ModelError("world_names length mismatch")
        self.world_names = world_names
        self.atom_index = {a: k for k, a in enumerate(self.atoms)}
        self.agent_index = {a: k for k, a in enumerate(self.agents)}
        # successor/predecessor adjacency, built once (the model is immutable)
        succ: list[list[list[int]]] = []
        pred: list[list[list[int]]] = []
        for r in self.relations:
            s: list[list[int]] = [[] for _ in range(n)]
            p: list[list[int]] = [[] for _ in range(n)]
            for u, v in sorted(r):
                s[u].append(v)
                p[v].append(u)
            succ.append(s)
            pred.append(p)
        self._succ = succ
        self._pred = pred

    @property
    def num_worlds(self) -> int:
        return len(self.labels)

    def succ(self, agent: int, world: int) -> list[int]:
        return self._succ[agent][world]

    def pred(self, agent: int, world: int) -> list[int]:
        return self._pred[agent][world]

    def label_atoms(self, world: int) -> tuple[str, ...]:
        lab = self.labels[world]
        return tuple(a for k, a in enumerate(self.atoms) if lab >> k & 1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EpistemicModel)
                and self.atoms == other.atoms and self.agents == other.agents
                and self.labels == other.labels and self.relations == other.relations)

    def __hash__(self) -> int:
        return hash((self.atoms, self.agents, self.labels, self.relations))

    def __repr__(self) -> str:
        return (f"EpistemicModel({len(self.labels)} worlds, "
                f"{len(self.atoms)} atoms, {len(self.agents)} agents)")


@dataclass(frozen=True)
class EpistemicState:
    """A pointed Kripke model: model plus designated ('actual') world."""

    model: EpistemicModel
    designated: int

    def __post_init__(self) -> None:
        if not (0 <= self.designated < self.model.num_worlds):
            raise ModelError(f"designated world {self.designated} out of range")

    @property
    def num_worlds(self) -> int:
        return self.model.num_worlds


# ---------------------------------------------------------------------------
# Model checking
# ---------------------------------------------------------------------------

def holds(model: EpistemicModel, world: int, phi: Formula) -> bool:
    """Standard Kripke semantics at ``world``.

    Atoms absent from the model are false; belief of an agent with no
    relation (including undeclared agents) is vacuously true.
    """
    if isinstance(phi, Atom):
        k = model.atom_index.get(phi.name)
        return k is not None and bool(model.labels[world] >> k & 1)
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bottom):
        return False
    if isinstance(phi, Not):
        return not holds(model, world, phi.sub)
    if isinstance(phi, And):
        return all(holds(model, world, p) for p in phi.parts)
    if isinstance(phi, Or):
        return any(holds(model, world, p) for p in phi.parts)
    if isinstance(phi, Implies):
        return (not holds(model, world, phi.premise)) or holds(model, world, phi.conclusion)
    if isinstance(phi, Believes):
        i = model.agent_index.get(phi.agent)
        if i is None:
            return True
        return all(holds(model, v, phi.sub) for v in model.succ(i, world))
    if isinstance(phi, Possible):
        i = model.agent_index.get(phi.agent)
        if i is None:
            return False
        return any(holds(model, v, phi.sub) for v in model.succ(i, world))
    raise FormulaError(f"unknown formula variant: {phi!r}")


def satisfies(state: EpistemicState, phi: Formula) -> bool:
    """Evaluate ``phi`` at the designated world of ``state``."""
    return holds(state.model, state.designated, phi)


# ---------------------------------------------------------------------------
# Depth and restriction
# ---------------------------------------------------------------------------

def depth_map(state: EpistemicState) -> dict[int, int]:
    """Shortest directed distance from the designated world, over all agents.

    Unreachable worlds are absent from the returned map.
    """
    model = state.model
    dist = {state.designated: 0}
    queue = deque([state.designated])
    while queue:
        w = queue.popleft()
        d = dist[w] + 1
        for i in range(len(model.agents)):
            for v in model.succ(i, w):
                if v not in dist:
                    dist[v] = d
                    queue.append(v)
    return dist


def restrict_with_map(state: EpistemicState, d: int) -> tuple[EpistemicState, dict[int, int]]:
    """Keep worlds at depth <= d and the edges among them.

    Returns the re-indexed state plus the old-index -> new-index map.
    Unreachable worlds are dropped.
    """
    model = state.model
    dist = depth_map(state)
    keep = sorted(w for w, dw in dist.items() if dw <= d)
    old_to_new = {w: k for k, w in enumerate(keep)}
    labels = [model.labels[w] for w in keep]
    relations = [
        {(old_to_new[u], old_to_new[v]) for u, v in r
         if u in old_to_new and v in old_to_new}
        for r in model.relations
    ]
    names = None
    if model.world_names is not None:
        names = [model.world_names[w] for w in keep]
    sub = EpistemicModel(model.atoms, model.agents, labels, relations, names)
    return EpistemicState(sub, old_to_new[state.designated]), old_to_new


def restrict(state: EpistemicState, d: int) -> EpistemicState:
    return restrict_with_map(state, d)[0]
