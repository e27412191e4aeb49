import random

import pytest

from deplan.actions import Action, Event, product_update, public_announcement
from deplan.contraction import bisimilar
from deplan.logic import (Atom, Believes, EpistemicModel, EpistemicState,
                          ModelError, Not, TOP, conj)
from deplan.planner import (PlanningTask, baseline_bfs, bounded_graph_search,
                            bounded_tree_search, child_node, init_node,
                            iter_bound_search, verify_plan)
from deplan.domains import bundled_tasks, gen_switches, load_task

from .corpus import chain_state


def chain_task(goal):
    s = chain_state(5)
    return PlanningTask(s, (public_announcement("noop", TOP, ["a"]),), goal)


def test_task_rejects_duplicate_action_names():
    s = chain_state(1)
    a = public_announcement("x", TOP, ["a"])
    with pytest.raises(ModelError):
        PlanningTask(s, (a, a), Atom("p"))


def test_init_node_chain_loses_bisimilarity():
    s = chain_state(5)
    n = init_node(s, 5, True)
    assert n.state.num_worlds == 1
    assert n.is_bisim is False
    assert init_node(s, 5, False).is_bisim is False


def test_init_node_singleton_keeps_bisimilarity():
    model = EpistemicModel(["p"], ["a"], [1], {"a": {(0, 0)}})
    s = EpistemicState(model, 0)
    n = init_node(s, 3, True)
    assert n.is_bisim is True
    assert bisimilar(n.state, s)


def test_child_node_bound_rules():
    model = EpistemicModel(["p"], ["a"], [0], {"a": {(0, 0)}})
    s = EpistemicState(model, 0)
    ann = public_announcement("a1", Believes("a", Not(Atom("p"))), ["a"])

    exact = init_node(s, 3, True)
    assert exact.is_bisim
    child = child_node(exact, ann, 2)
    assert child.bound == 3 and child.is_bisim

    approx = init_node(s, 3, True)
    approx.is_bisim = False
    child = child_node(approx, ann, 2)
    assert child.bound == 2 and not child.is_bisim

    tight = init_node(s, 2, True)
    tight.is_bisim = False
    assert child_node(tight, ann, 2) is None


def test_goal_true_initially_empty_plan():
    s = chain_state(5)
    r = bounded_tree_search(chain_task(Atom("p")), 0)
    assert r.plan == []
    assert r.stats.nodes_expanded == 0
    assert baseline_bfs(chain_task(Atom("p"))).plan == []


def test_switches_counts_per_bound():
    r2 = bounded_tree_search(gen_switches(2), 0)
    assert len(r2.plan) == 2 and r2.stats.nodes_expanded == 3
    r3 = bounded_tree_search(gen_switches(3), 0)
    assert len(r3.plan) == 3 and r3.stats.nodes_expanded == 10


def test_graph_search_merges_duplicates():
    tree = bounded_tree_search(gen_switches(3), 0)
    graph = bounded_graph_search(gen_switches(3), 0)
    assert len(graph.plan) == len(tree.plan) == 3
    assert graph.stats.nodes_expanded <= tree.stats.nodes_expanded


def test_graph_search_terminates_on_unsolvable_cycle():
    # one self-inverse toggle, unreachable goal: the visited set closes the
    # 2-cycle, tree search would iterate forever
    model = EpistemicModel(["p", "q"], ["a"], [0], {"a": {(0, 0)}})
    s = EpistemicState(model, 0)
    toggle = Action("flip", [Event(TOP, (("p", Not(Atom("p"))),))],
                    {"a": {(0, 0)}}, 0)
    task = PlanningTask(s, (toggle,), Atom("q"))
    r = bounded_graph_search(task, 0)
    assert r.plan is None and r.reason == "exhausted"
    assert r.stats.nodes_expanded == 2


def test_iter_search_switches_first_iteration():
    r = iter_bound_search(gen_switches(4), "tree")
    assert len(r.plan) == 4
    assert r.stats.bound == 0
    assert len(r.stats.iterations) == 1


def test_iter_search_climbs_to_required_bound():
    # goal md 0 but the only useful action has an md-2 precondition, so the
    # first iterations fail and the bound must climb to at least 2
    model = EpistemicModel(["p"], ["a"], [0], {"a": {(0, 0)}})
    s = EpistemicState(model, 0)
    deep_pre = Believes("a", Believes("a", Not(Atom("p"))))
    act = Action("deep", [Event(deep_pre, (("p", TOP),))], {"a": {(0, 0)}}, 0)
    task = PlanningTask(s, (act,), Atom("p"))
    r = iter_bound_search(task, "tree", max_bound=8)
    assert r.plan == ["deep"]
    assert r.stats.bound >= 2
    assert len(r.stats.iterations) >= 3


def test_iter_search_limits():
    model = EpistemicModel(["p"], ["a"], [0], {"a": {(0, 0)}})
    task = PlanningTask(EpistemicState(model, 0),
                        (public_announcement("noop", TOP, ["a"]),), Atom("p"))
    capped = iter_bound_search(task, "graph", max_bound=2)
    assert capped.plan is None and capped.reason == "max-bound"
    timed = iter_bound_search(task, "tree", timeout=0.0)
    assert timed.plan is None and timed.reason == "timeout"


def _deep_precondition_task():
    model = EpistemicModel(["p", "q"], ["a"], [0], {"a": {(0, 0)}})
    s = EpistemicState(model, 0)
    flag = Action("flag", [Event(Not(Atom("q")), (("q", TOP),))],
                  {"a": {(0, 0)}}, 0)
    deep_pre = Believes("a", Believes("a", Atom("q")))
    deep = Action("deep", [Event(deep_pre, (("p", TOP),))], {"a": {(0, 0)}}, 0)
    return PlanningTask(s, (flag, deep), Atom("p"))


def test_reuse_exact_flag_changes_nothing_observable():
    # first iterations fail, so the cross-iteration memo actually kicks in
    task = _deep_precondition_task()
    for variant in ("tree", "graph"):
        plain = iter_bound_search(task, variant, max_bound=6)
        memo = iter_bound_search(task, variant, max_bound=6, reuse_exact=True)
        assert plain.plan == memo.plan == ["flag", "deep"]
        assert plain.stats.bound == memo.stats.bound


def test_baseline_matches_iter_plan_lengths():
    for n in range(1, 5):
        task = gen_switches(n)
        a = iter_bound_search(task, "tree").plan
        b = baseline_bfs(task).plan
        assert len(a) == len(b) == n


def test_verify_plan_paths():
    task = gen_switches(3)
    assert verify_plan(task, ["switch_1", "switch_2", "switch_3"])
    bad = verify_plan(task, ["switch_1", "switch_1"])
    assert not bad.ok and bad.failed_at == 1
    unknown = verify_plan(task, ["nope"])
    assert not unknown.ok and unknown.failed_at == 0
    short = verify_plan(task, ["switch_1"])
    assert not short.ok and short.failed_at is None


def test_is_bisim_nodes_match_uncontracted_replay():
    task = gen_switches(2)
    root = init_node(task.initial, 2, True)
    frontier = [(root, task.initial)]
    for _ in range(2):
        nxt = []
        for node, real in frontier:
            for a in task.actions:
                from deplan.actions import applicable
                if not applicable(node.state, a):
                    continue
                child = child_node(node, a, 0)
                real_child = product_update(real, a)
                if child.is_bisim:
                    assert bisimilar(child.state, real_child)
                nxt.append((child, real_child))
        frontier = nxt
