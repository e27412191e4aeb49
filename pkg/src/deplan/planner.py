"""Iterative bound-deepening tree/graph search, the standard-contraction BFS
baseline, and plan verification.

Node-count convention: ``nodes_expanded`` counts frontier pops that fail the
goal test; the node that satisfies the goal is popped but not counted. This
is the convention the bundled switch-room benchmark numbers are pinned to.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .actions import Action, applicable, product_update
from .contraction import bisimilar, standard_contraction
from .logic import EpistemicState, Formula, ModelError, modal_depth, satisfies
from .signatures import canonical_contraction, encode_state


@dataclass(frozen=True)
class PlanningTask:
    initial: EpistemicState
    actions: tuple[Action, ...]
    goal: Formula
    name: str = "task"

    def __post_init__(self) -> None:
        names = [a.name for a in self.actions]
        if len(set(names)) != len(names):
            raise ModelError("duplicate action names")

    @property
    def goal_depth(self) -> int:
        return modal_depth(self.goal)

    @property
    def max_action_depth(self) -> int:
        return max((a.md for a in self.actions), default=0)


@dataclass
class SearchNode:
    state: EpistemicState   # canonically contracted at `bound`
    bound: int
    is_bisim: bool
    parent: "SearchNode | None" = None
    via: str | None = None  # incoming action name

    def plan(self) -> list[str]:
        steps: list[str] = []
        node: SearchNode | None = self
        while node is not None and node.via is not None:
            steps.append(node.via)
            node = node.parent
        return steps[::-1]


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    nodes_generated: int = 0
    bound: int = 0
    wall_ms: float = 0.0
    iterations: list["SearchStats"] = field(default_factory=list)


@dataclass
class SearchResult:
    plan: list[str] | None
    stats: SearchStats
    reason: str = ""      # on failure: "exhausted" | "max-bound" | "timeout"

    @property
    def solved(self) -> bool:
        return self.plan is not None


class SearchTimeout(Exception):
    pass


def init_node(s: EpistemicState, b: int, was_bisim: bool) -> SearchNode:
    contracted = canonical_contraction(s, b)
    return SearchNode(contracted, b, bisimilar(contracted, s) and was_bisim)


def child_node(n: SearchNode, a: Action, d_g: int) -> SearchNode | None:
    """Successor node, or None when the approximation would become too weak
    to evaluate the goal (the depth-pruning rule)."""
    if n.is_bisim:
        child = init_node(product_update(n.state, a), n.bound, True)
    elif n.bound - a.md >= d_g:
        child = init_node(product_update(n.state, a), n.bound - a.md, False)
    else:
        return None
    assert child.bound >= d_g
    child.parent = n
    child.via = a.name
    return child


def _bounded_search(task: PlanningTask, b: int, use_visited: bool,
                    deadline: float | None,
                    exact_memo: dict | None) -> SearchResult:
    assert b >= task.goal_depth
    stats = SearchStats(bound=b)
    start = time.perf_counter()
    d_g = task.goal_depth

    root = init_node(task.initial, b, True)
    frontier: deque[SearchNode] = deque([root])
    stats.nodes_generated += 1
    visited: set[tuple[int, bytes]] = set()
    if use_visited:
        visited.add((root.bound, encode_state(root.state)))
    expanded_exact: dict[tuple[str, ...], EpistemicState] = {}

    while frontier:
        if deadline is not None and time.perf_counter() > deadline:
            raise SearchTimeout
        n = frontier.popleft()
        if satisfies(n.state, task.goal):
            stats.wall_ms = (time.perf_counter() - start) * 1e3
            return SearchResult(n.plan(), stats)
        stats.nodes_expanded += 1
        path = tuple(n.plan())
        if exact_memo is not None and n.is_bisim:
            expanded_exact[path] = n.state
        for a in task.actions:
            if a.md > n.bound or not applicable(n.state, a):
                continue
            if exact_memo is not None and path + (a.name,) in exact_memo:
                # state recorded in a previous iteration with is_bisim true;
                # exact up to bisimilarity, so only the bound needs bumping
                child = SearchNode(exact_memo[path + (a.name,)], n.bound, True,
                                   parent=n, via=a.name)
            else:
                child = child_node(n, a, d_g)
            if child is None:
                continue
            if use_visited:
                key = (child.bound, encode_state(child.state))
                if key in visited:
                    continue
                visited.add(key)
            frontier.append(child)
            stats.nodes_generated += 1

    if exact_memo is not None:
        exact_memo.update(expanded_exact)
    stats.wall_ms = (time.perf_counter() - start) * 1e3
    return SearchResult(None, stats, reason="exhausted")


def bounded_tree_search(task: PlanningTask, b: int,
                        deadline: float | None = None) -> SearchResult:
    """FIFO breadth-first search over bound-b contracted nodes."""
    return _bounded_search(task, b, use_visited=False, deadline=deadline,
                           exact_memo=None)


def bounded_graph_search(task: PlanningTask, b: int,
                         deadline: float | None = None) -> SearchResult:
    """Tree search plus duplicate detection on (bound, canonical encoding).
    Identical encodings characterize bound-bisimilarity at a fixed bound, so
    the visited check is an exact state-identity test."""
    return _bounded_search(task, b, use_visited=True, deadline=deadline,
                           exact_memo=None)


def iter_bound_search(task: PlanningTask,
                      variant: Literal["tree", "graph"] = "tree",
                      max_bound: int = 64,
                      timeout: float | None = None,
                      reuse_exact: bool = False) -> SearchResult:
    """Re-run the bounded search with b = md(goal), md(goal)+1, ... until a
    plan is found, the bound ceiling is hit, or the timeout expires.

    ``reuse_exact`` caches states of expanded exact (is_bisim) nodes across
    iterations and skips recomputing them; correctness never depends on it.
    """
    deadline = None if timeout is None else time.perf_counter() + timeout
    use_visited = variant == "graph"
    memo: dict | None = {} if reuse_exact else None
    total = SearchStats(bound=task.goal_depth)
    start = time.perf_counter()
    b = task.goal_depth
    while b <= max_bound:
        try:
            result = _bounded_search(task, b, use_visited, deadline, memo)
        except SearchTimeout:
            total.wall_ms = (time.perf_counter() - start) * 1e3
            return SearchResult(None, total, reason="timeout")
        total.iterations.append(result.stats)
        total.nodes_expanded += result.stats.nodes_expanded
        total.nodes_generated += result.stats.nodes_generated
        total.bound = b
        if result.solved:
            total.wall_ms = (time.perf_counter() - start) * 1e3
            return SearchResult(result.plan, total)
        b += 1
    total.wall_ms = (time.perf_counter() - start) * 1e3
    return SearchResult(None, total, reason="max-bound")


def baseline_bfs(task: PlanningTask, timeout: float | None = None) -> SearchResult:
    """Plain BFS keeping each state as its standard bisimulation contraction.
    No visited set, mirroring the tree-search comparison."""
    deadline = None if timeout is None else time.perf_counter() + timeout
    stats = SearchStats()
    start = time.perf_counter()
    root = SearchNode(standard_contraction(task.initial), 0, True)
    frontier: deque[SearchNode] = deque([root])
    stats.nodes_generated += 1
    try:
        while frontier:
            if deadline is not None and time.perf_counter() > deadline:
                raise SearchTimeout
            n = frontier.popleft()
            if satisfies(n.state, task.goal):
                stats.wall_ms = (time.perf_counter() - start) * 1e3
                return SearchResult(n.plan(), stats)
            stats.nodes_expanded += 1
            for a in task.actions:
                if not applicable(n.state, a):
                    continue
                child = SearchNode(standard_contraction(product_update(n.state, a)),
                                   0, True, parent=n, via=a.name)
                frontier.append(child)
                stats.nodes_generated += 1
    except SearchTimeout:
        stats.wall_ms = (time.perf_counter() - start) * 1e3
        return SearchResult(None, stats, reason="timeout")
    stats.wall_ms = (time.perf_counter() - start) * 1e3
    return SearchResult(None, stats, reason="exhausted")


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failed_at: int | None = None   # index of the offending step, if any
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_plan(task: PlanningTask, plan: Iterable[str]) -> VerifyResult:
    """Replay the plan with uncontracted product updates and check
    applicability at each step and the goal at the end. This is the
    soundness oracle for every search variant."""
    by_name = {a.name: a for a in task.actions}
    state = task.initial
    for k, name in enumerate(plan):
        a = by_name.get(name)
        if a is None:
            return VerifyResult(False, k, f"unknown action {name!r}")
        if not applicable(state, a):
            return VerifyResult(False, k, f"action {name!r} not applicable")
        state = product_update(state, a)
    if not satisfies(state, task.goal):
        return VerifyResult(False, None, "goal not satisfied in final state")
    return VerifyResult(True)
