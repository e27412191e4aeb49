"""Benchmark generators, the JSON task/state document format, and access to
the bundled instances.

A task document is one JSON object::

    {
      "name": "switches-2",
      "atoms": ["on_1", "on_2"],
      "agents": ["a_0", "a_1", "a_2"],
      "worlds": [{"name": "w0", "label": []}],
      "relations": {"a_0": [["w0", "w0"]], ...},
      "designated": "w0",
      "actions": [
        {"name": "switch_1",
         "events": [{"name": "e", "pre": ["not", "on_1"],
                     "post": {"on_1": "top"}},
                    {"name": "i", "pre": "top", "post": {}}],
         "relations": {"a_0": [["e", "e"], ["i", "i"]], ...},
         "designated": "e"},
        ...
      ],
      "goal": ["and", "on_1", "on_2"]
    }

A state document is the same object without ``actions`` and ``goal``.
Formulas use a prefix tree syntax: the strings ``"top"`` and ``"bottom"``,
any other string as an atom name, and lists ``["not", f]``,
``["and", f, ...]``, ``["or", f, ...]``, ``["implies", f, f]``,
``["believes", agent, f]``, ``["possible", agent, f]``. Scalars are only
names and numbers. Bundled instances live at ``domains/<name>/<instance>.task``
inside the package.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .actions import Action, Event, public_announcement
from .logic import (Atom, Believes, BOTTOM, EpistemicModel, EpistemicState,
                    Formula, And, Or, Not, Implies, Possible, TOP,
                    conj, disj, formula_agents, formula_atoms)
from .planner import PlanningTask


class DocumentError(ValueError):
    """Raised for unparsable or semantically invalid task/state documents."""


# ---------------------------------------------------------------------------
# Formula documents
# ---------------------------------------------------------------------------

def formula_from_doc(doc: Any) -> Formula:
    if isinstance(doc, str):
        if doc == "top":
            return TOP
        if doc == "bottom":
            return BOTTOM
        return Atom(doc)
    if not isinstance(doc, list) or not doc:
        raise DocumentError(f"bad formula node: {doc!r}")
    op = doc[0]
    if op == "not":
        if len(doc) != 2:
            raise DocumentError("'not' takes one subformula")
        return Not(formula_from_doc(doc[1]))
    if op == "and":
        return conj(formula_from_doc(p) for p in doc[1:])
    if op == "or":
        return disj(formula_from_doc(p) for p in doc[1:])
    if op == "implies":
        if len(doc) != 3:
            raise DocumentError("'implies' takes two subformulas")
        return Implies(formula_from_doc(doc[1]), formula_from_doc(doc[2]))
    if op in ("believes", "possible"):
        if len(doc) != 3 or not isinstance(doc[1], str):
            raise DocumentError(f"'{op}' takes an agent name and a subformula")
        cls = Believes if op == "believes" else Possible
        return cls(doc[1], formula_from_doc(doc[2]))
    raise DocumentError(f"unknown formula operator: {op!r}")


def formula_to_doc(phi: Formula) -> Any:
    if isinstance(phi, Atom):
        if phi.name in ("top", "bottom"):
            raise DocumentError(f"atom name {phi.name!r} is reserved")
        return phi.name
    if phi == TOP:
        return "top"
    if phi == BOTTOM:
        return "bottom"
    if isinstance(phi, Not):
        return ["not", formula_to_doc(phi.sub)]
    if isinstance(phi, And):
        return ["and", *(formula_to_doc(p) for p in phi.parts)]
    if isinstance(phi, Or):
        return ["or", *(formula_to_doc(p) for p in phi.parts)]
    if isinstance(phi, Implies):
        return ["implies", formula_to_doc(phi.premise), formula_to_doc(phi.conclusion)]
    if isinstance(phi, Believes):
        return ["believes", phi.agent, formula_to_doc(phi.sub)]
    if isinstance(phi, Possible):
        return ["possible", phi.agent, formula_to_doc(phi.sub)]
    raise DocumentError(f"cannot serialize formula: {phi!r}")


# ---------------------------------------------------------------------------
# State documents
# ---------------------------------------------------------------------------

def _check_vocab(phi: Formula, atoms: set[str], agents: set[str], where: str) -> None:
    for a in formula_atoms(phi) - atoms:
        raise DocumentError(f"{where}: unknown atom {a!r}")
    for a in formula_agents(phi) - agents:
        raise DocumentError(f"{where}: unknown agent {a!r}")


def _state_from_obj(obj: dict) -> EpistemicState:
    for key in ("atoms", "agents", "worlds", "relations", "designated"):
        if key not in obj:
            raise DocumentError(f"missing section {key!r}")
    atoms = list(obj["atoms"])
    agents = list(obj["agents"])
    names: list[str] = []
    labels: list[int] = []
    atom_pos = {a: k for k, a in enumerate(atoms)}
    for wdoc in obj["worlds"]:
        name = wdoc["name"]
        if name in names:
            raise DocumentError(f"duplicate world name {name!r}")
        names.append(name)
        lab = 0
        for a in wdoc.get("label", []):
            if a not in atom_pos:
                raise DocumentError(f"world {name!r}: unknown atom {a!r}")
            lab |= 1 << atom_pos[a]
        labels.append(lab)
    windex = {n: k for k, n in enumerate(names)}
    relations: dict[str, set[tuple[int, int]]] = {}
    for agent, edges in obj["relations"].items():
        if agent not in agents:
            raise DocumentError(f"relations mention unknown agent {agent!r}")
        pairs: set[tuple[int, int]] = set()
        for u, v in edges:
            for end in (u, v):
                if end not in windex:
                    raise DocumentError(
                        f"relation of agent {agent!r}: unknown world {end!r}")
            pairs.add((windex[u], windex[v]))
        relations[agent] = pairs
    designated = obj["designated"]
    if designated not in windex:
        raise DocumentError(f"designated world {designated!r} not declared")
    model = EpistemicModel(atoms, agents, labels, relations, world_names=names)
    return EpistemicState(model, windex[designated])


def _world_name(model: EpistemicModel, w: int) -> str:
    if model.world_names is None:
        return f"w{w}"
    name = model.world_names[w]
    return name.hex() if isinstance(name, bytes) else str(name)


def _state_to_obj(s: EpistemicState) -> dict:
    model = s.model
    names = [_world_name(model, w) for w in range(model.num_worlds)]
    worlds = [{"name": names[w], "label": list(model.label_atoms(w))}
              for w in range(model.num_worlds)]
    relations = {agent: sorted([names[u], names[v]] for u, v in model.relations[i])
                 for i, agent in enumerate(model.agents)}
    return {"atoms": list(model.atoms), "agents": list(model.agents),
            "worlds": worlds, "relations": relations,
            "designated": names[s.designated]}


def _parse_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"parse error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    return obj


def load_state(source: str | Path) -> EpistemicState:
    """Parse a state document from a path or a JSON string."""
    return _state_from_obj(_parse_json(_read_source(source)))


def print_state(s: EpistemicState) -> str:
    return json.dumps(_state_to_obj(s), indent=2) + "\n"


def _read_source(source: str | Path) -> str:
    if isinstance(source, Path):
        return source.read_text()
    if source.lstrip().startswith("{"):
        return source
    return Path(source).read_text()


# ---------------------------------------------------------------------------
# Task documents
# ---------------------------------------------------------------------------

def _action_from_obj(obj: dict, atoms: list[str], agents: list[str]) -> Action:
    name = obj.get("name")
    if not isinstance(name, str):
        raise DocumentError("action without a name")
    aset, gset = set(atoms), set(agents)
    events: list[Event] = []
    enames: list[str] = []
    for edoc in obj.get("events", []):
        ename = edoc["name"]
        if ename in enames:
            raise DocumentError(f"action {name!r}: duplicate event name {ename!r}")
        enames.append(ename)
        pre = formula_from_doc(edoc.get("pre", "top"))
        _check_vocab(pre, aset, gset, f"action {name!r}, event {ename!r} pre")
        post = []
        for atom, fdoc in edoc.get("post", {}).items():
            if atom not in aset:
                raise DocumentError(f"action {name!r}: postcondition on unknown atom {atom!r}")
            phi = formula_from_doc(fdoc)
            _check_vocab(phi, aset, gset, f"action {name!r}, post of {atom!r}")
            post.append((atom, phi))
        events.append(Event(pre, tuple(post)))
    eindex = {n: k for k, n in enumerate(enames)}
    relations: dict[str, set[tuple[int, int]]] = {}
    for agent, edges in obj.get("relations", {}).items():
        if agent not in gset:
            raise DocumentError(f"action {name!r}: relations mention unknown agent {agent!r}")
        pairs: set[tuple[int, int]] = set()
        for u, v in edges:
            for end in (u, v):
                if end not in eindex:
                    raise DocumentError(f"action {name!r}: unknown event {end!r}")
            pairs.add((eindex[u], eindex[v]))
        relations[agent] = pairs
    designated = obj.get("designated")
    if designated not in eindex:
        raise DocumentError(f"action {name!r}: designated event {designated!r} not declared")
    return Action(name, events, {a: relations.get(a, set()) for a in agents},
                  eindex[designated])


def _event_names(action: Action) -> list[str]:
    return [f"e{k}" for k in range(len(action.events))]


def _action_to_obj(action: Action) -> dict:
    enames = _event_names(action)
    events = []
    for k, ev in enumerate(action.events):
        events.append({"name": enames[k], "pre": formula_to_doc(ev.pre),
                       "post": {atom: formula_to_doc(f) for atom, f in ev.post}})
    relations = {agent: sorted([enames[u], enames[v]] for u, v in pairs)
                 for agent, pairs in action.relations.items()}
    return {"name": action.name, "events": events, "relations": relations,
            "designated": enames[action.designated]}


def load_task(source: str | Path) -> PlanningTask:
    """Parse a task document from a path or a JSON string."""
    obj = _parse_json(_read_source(source))
    for key in ("actions", "goal"):
        if key not in obj:
            raise DocumentError(f"missing section {key!r}")
    initial = _state_from_obj(obj)
    atoms = list(initial.model.atoms)
    agents = list(initial.model.agents)
    actions = tuple(_action_from_obj(a, atoms, agents) for a in obj["actions"])
    goal = formula_from_doc(obj["goal"])
    _check_vocab(goal, set(atoms), set(agents), "goal")
    return PlanningTask(initial, actions, goal, name=obj.get("name", "task"))


def print_task(task: PlanningTask) -> str:
    obj = _state_to_obj(task.initial)
    doc = {"name": task.name, **obj,
           "actions": [_action_to_obj(a) for a in task.actions],
           "goal": formula_to_doc(task.goal)}
    return json.dumps(doc, indent=2) + "\n"


def bundled_dir() -> Path:
    """Directory holding the checked-in benchmark instances."""
    return Path(resources.files(__package__)) / "domains"


def bundled_tasks() -> list[Path]:
    return sorted(bundled_dir().glob("*/*.task"))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_switches(n: int, with_comm: bool = False) -> PlanningTask:
    """The n-switch room: one world, n+1 agents, and one toggle action per
    switch that only the toggling agent and the observer a_0 witness; the
    other agents believe nothing happened. Goal: all switches on.

    ``with_comm`` adds one announcement action per switch (the observer
    announcing that the switch is on), which raises the depth the search has
    to budget for without changing the shortest plan.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    atoms = [f"on_{k}" for k in range(1, n + 1)]
    agents = [f"a_{k}" for k in range(n + 1)]
    relations = {a: {(0, 0)} for a in agents}
    model = EpistemicModel(atoms, agents, [0], relations, world_names=["w0"])
    initial = EpistemicState(model, 0)

    actions: list[Action] = []
    for k in range(1, n + 1):
        on_k = Atom(f"on_{k}")
        events = [Event(Not(on_k), ((f"on_{k}", TOP),)), Event(TOP)]
        rel = {}
        for j, agent in enumerate(agents):
            if j == 0 or j == k:
                rel[agent] = {(0, 0), (1, 1)}
            else:
                rel[agent] = {(0, 1), (1, 1)}
        actions.append(Action(f"switch_{k}", events, rel, designated=0))
    if with_comm:
        for k in range(1, n + 1):
            actions.append(public_announcement(
                f"announce_{k}", Believes("a_0", Atom(f"on_{k}")), agents))

    goal = conj(Atom(a) for a in atoms)
    return PlanningTask(initial, tuple(actions), goal,
                        name=f"switches-{n}" + ("-comm" if with_comm else ""))


def gen_consecutive_numbers(N: int, na: int, nb: int) -> tuple[EpistemicState, Action]:
    """The consecutive-numbers puzzle: agents a and b hold numbers differing
    by one, each sees only their own. Worlds are the number pairs reachable
    from the actual pair through either agent's uncertainty; an agent's
    relation links worlds agreeing on that agent's number.

    Also returns the public announcement that b does not know a's number,
    which prunes the worlds where b could deduce it.
    """
    if not (0 <= na <= N and 0 <= nb <= N and abs(na - nb) == 1):
        raise ValueError("numbers must lie in [0, N] and differ by exactly one")
    start = (na, nb)
    frontier = [start]
    worlds = {start}
    while frontier:
        x, y = frontier.pop()
        # a keeps x and considers y = x +- 1; b keeps y and considers x = y +- 1
        for cand in ((x, x - 1), (x, x + 1), (y - 1, y), (y + 1, y)):
            cx, cy = cand
            if 0 <= cx <= N and 0 <= cy <= N and abs(cx - cy) == 1 and cand not in worlds:
                worlds.add(cand)
                frontier.append(cand)
    order = sorted(worlds)
    index = {p: k for k, p in enumerate(order)}

    atoms = [f"has_a_{k}" for k in range(N + 1)] + [f"has_b_{k}" for k in range(N + 1)]
    agents = ["a", "b"]
    labels = [(1 << x) | (1 << (N + 1 + y)) for x, y in order]
    rel_a = {(index[p], index[q]) for p in order for q in order if p[0] == q[0]}
    rel_b = {(index[p], index[q]) for p in order for q in order if p[1] == q[1]}
    names = [f"a{x}b{y}" for x, y in order]
    model = EpistemicModel(atoms, agents, labels, {"a": rel_a, "b": rel_b},
                           world_names=names)
    state = EpistemicState(model, index[start])

    b_knows_a = disj(Believes("b", Atom(f"has_a_{k}")) for k in range(N + 1))
    ann = public_announcement("ann_b_not_knows", Not(b_knows_a), agents)
    return state, ann
