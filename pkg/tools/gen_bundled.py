"""Regenerate the bundled benchmark instances under src/deplan/domains/.

The coin-in-the-box, selective-communication and collaboration domains are
hand-built reconstructions from the literature; their atom/agent/world/action
counts are pinned by tests, their exact action encodings are not.
"""
from __future__ import annotations

from pathlib import Path

from deplan.actions import Action, Event, public_announcement
from deplan.domains import gen_switches, print_state, print_task
from deplan.logic import (Atom, Believes, EpistemicModel, EpistemicState, Not,
                          TOP, conj, disj)
from deplan.planner import PlanningTask

ROOT = Path(__file__).resolve().parents[1] / "src" / "deplan" / "domains"


def public_ontic(name: str, pre, post, agents) -> Action:
    return Action(name, [Event(pre, tuple(post))],
                  {a: {(0, 0)} for a in agents}, designated=0)


def sensing(name: str, yes_pre, agents, observer: str) -> Action:
    """Two-outcome observation: the observer learns whether ``yes_pre`` holds,
    everyone else only learns that the observation happened."""
    events = [Event(yes_pre), Event(Not(yes_pre))]
    all_pairs = {(0, 0), (0, 1), (1, 0), (1, 1)}
    rel = {a: ({(0, 0), (1, 1)} if a == observer else all_pairs) for a in agents}
    return Action(name, events, rel, designated=0)


def coin_in_the_box() -> list[PlanningTask]:
    atoms = ["opened", "heads", "looking_a", "looking_b", "looking_c"]
    agents = ["a", "b", "c"]
    # worlds: coin heads vs tails, nobody can tell; agent a starts attentive
    labels = [0b110, 0b100]
    all_pairs = {(u, v) for u in range(2) for v in range(2)}
    model = EpistemicModel(atoms, agents, labels,
                           {x: all_pairs for x in agents},
                           world_names=["w_heads", "w_tails"])
    initial = EpistemicState(model, 0)

    heads, opened = Atom("heads"), Atom("opened")
    actions: list[Action] = []
    for x in agents:
        actions.append(public_ontic(f"open_{x}", TOP, [("opened", TOP)], agents))
    for x in agents:
        actions.append(public_ontic(f"look_{x}", TOP, [(f"looking_{x}", TOP)], agents))
    for x in agents:
        actions.append(sensing(f"peek_{x}",
                               conj([opened, Atom(f"looking_{x}"), heads]),
                               agents, observer=x))
    for x in agents:
        actions.append(public_announcement(f"announce_heads_{x}",
                                           Believes(x, heads), agents))
        actions.append(public_announcement(f"announce_tails_{x}",
                                           Believes(x, Not(heads)), agents))
        actions.append(public_announcement(
            f"announce_not_knows_{x}",
            Not(Believes(x, heads)) & Not(Believes(x, Not(heads))), agents))
    for x in agents:
        for y in agents:
            if x != y:
                actions.append(public_announcement(
                    f"signal_{x}_{y}",
                    Believes(x, heads) | Believes(x, Not(heads)), agents))
                actions.append(public_ontic(
                    f"distract_{x}_{y}", Atom(f"looking_{y}"),
                    [(f"looking_{y}", Not(TOP))], agents))
    actions.append(public_ontic("shake", Not(opened), [], agents))
    assert len(actions) == 31, len(actions)

    return [
        PlanningTask(initial, tuple(actions), Believes("a", heads), name="cb-1"),
        PlanningTask(initial, tuple(actions),
                     Believes("b", Believes("a", heads) | Believes("a", Not(heads))),
                     name="cb-2"),
    ]


def selective_communication() -> list[PlanningTask]:
    atoms = ["at_1", "at_2", "at_3", "at_4", "secret", "heard", "noise"]
    agents = ["a", "b"]
    # a stands in room 1 where the secret may or may not hold
    labels = [0b10001, 0b00001]
    all_pairs = {(u, v) for u in range(2) for v in range(2)}
    model = EpistemicModel(atoms, agents, labels,
                           {x: all_pairs for x in agents},
                           world_names=["w_secret", "w_plain"])
    initial = EpistemicState(model, 0)
    secret = Atom("secret")

    actions: list[Action] = []
    for i in range(1, 4):
        actions.append(public_ontic(
            f"move_right_{i}", Atom(f"at_{i}"),
            [(f"at_{i}", Not(TOP)), (f"at_{i + 1}", TOP)], agents))
        actions.append(public_ontic(
            f"move_left_{i + 1}", Atom(f"at_{i + 1}"),
            [(f"at_{i + 1}", Not(TOP)), (f"at_{i}", TOP)], agents))
    actions.append(sensing("sense_secret", Atom("at_1") & secret,
                           agents, observer="a"))
    for i in range(1, 5):
        actions.append(public_announcement(f"tell_at_{i}", Atom(f"at_{i}"), agents))
    actions.append(public_announcement(
        "announce_secret", Believes("a", secret) & Atom("at_2"), agents))
    actions.append(public_announcement(
        "announce_knows", Believes("a", secret) | Believes("a", Not(secret)), agents))
    actions.append(public_ontic("shout", Believes("b", secret),
                                [("heard", TOP)], agents))
    assert len(actions) == 14, len(actions)

    return [
        PlanningTask(initial, tuple(actions), Believes("b", secret), name="sc-1"),
        PlanningTask(initial, tuple(actions),
                     Believes("b", Believes("a", secret)), name="sc-2"),
    ]


def collaboration() -> list[PlanningTask]:
    rooms = [1, 2, 3]
    boxes = [1, 2, 3, 4]
    atoms = [f"at_a_{r}" for r in rooms] + [f"at_b_{r}" for r in rooms]
    atoms += [f"box{j}_in_{r}" for j in boxes for r in rooms]
    agents = ["a", "b"]
    pos = {a: k for k, a in enumerate(atoms)}

    # four worlds: box1 in room 1 or 2, box2 in room 2 or 3; boxes 3 and 4
    # are known to sit in room 1. a starts in room 1, b in room 2 (one move
    # from room 1, so fetching the box1 fact directly is as short as being
    # told about it, keeping plan lengths algorithm-independent).
    base = (1 << pos["at_a_1"]) | (1 << pos["at_b_2"]) \
        | (1 << pos["box3_in_1"]) | (1 << pos["box4_in_1"])
    combos = [(1, 2), (1, 3), (2, 2), (2, 3)]
    labels = [base | (1 << pos[f"box1_in_{r1}"]) | (1 << pos[f"box2_in_{r2}"])
              for r1, r2 in combos]
    all_pairs = {(u, v) for u in range(4) for v in range(4)}
    model = EpistemicModel(atoms, agents, labels,
                           {x: all_pairs for x in agents},
                           world_names=[f"w_b1r{r1}_b2r{r2}" for r1, r2 in combos])
    initial = EpistemicState(model, 0)

    actions: list[Action] = []
    for x in agents:
        for i, j in ((1, 2), (2, 1), (2, 3), (3, 2)):
            actions.append(public_ontic(
                f"move_{x}_{i}_{j}", Atom(f"at_{x}_{i}"),
                [(f"at_{x}_{i}", Not(TOP)), (f"at_{x}_{j}", TOP)], agents))
    for x in agents:
        for j in boxes:
            here = disj(Atom(f"at_{x}_{r}") & Atom(f"box{j}_in_{r}") for r in rooms)
            actions.append(sensing(f"sense_{x}_box{j}", here, agents, observer=x))
    for x in agents:
        for j in (1, 2):
            for r in rooms:
                actions.append(public_announcement(
                    f"tell_{x}_box{j}_{r}",
                    Believes(x, Atom(f"box{j}_in_{r}")), agents))
    assert len(actions) == 28, len(actions)

    goal1 = Believes("b", Atom("box1_in_1"))
    return [
        PlanningTask(initial, tuple(actions), goal1, name="cc-1"),
        PlanningTask(initial, tuple(actions), Believes("a", goal1), name="cc-2"),
    ]


def chain_state(length: int) -> EpistemicState:
    n = length + 1
    model = EpistemicModel(["p"], ["a"], [1] * n,
                           {"a": {(k, k + 1) for k in range(length)}},
                           world_names=[f"w{k}" for k in range(n)])
    return EpistemicState(model, 0)


def loop_state() -> EpistemicState:
    model = EpistemicModel(["p"], ["a"], [1], {"a": {(0, 0)}}, world_names=["w0"])
    return EpistemicState(model, 0)


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(path)


def main() -> None:
    for n in range(1, 7):
        task = gen_switches(n)
        write(ROOT / "switches" / f"switches-{n}.task", print_task(task))
    for task in coin_in_the_box():
        write(ROOT / "coin_in_the_box" / f"{task.name}.task", print_task(task))
    for task in selective_communication():
        write(ROOT / "selective_communication" / f"{task.name}.task", print_task(task))
    for task in collaboration():
        write(ROOT / "collaboration_communication" / f"{task.name}.task", print_task(task))
    write(ROOT / "states" / "chain-5.state", print_state(chain_state(5)))
    write(ROOT / "states" / "loop.state", print_state(loop_state()))


if __name__ == "__main__":
    main()
