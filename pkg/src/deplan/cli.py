"""Command-line front end: solve tasks, contract/compare states, run benches.

Exit codes: 0 success (solve: plan found; check: answer is yes), 1 failure
(no plan / timeout / answer is no), 2 input error. Results go to standard
out, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .contraction import (b_bisimilar, bisimilar, standard_b_contraction,
                          standard_contraction)
from .domains import DocumentError, load_state, load_task, print_state
from .logic import ModelError, modal_depth, restrict
from .planner import (PlanningTask, SearchResult, baseline_bfs,
                      iter_bound_search, verify_plan)
from .signatures import canonical_contraction, rooted_contraction

ALGORITHMS = ("iter-tree", "iter-graph", "bfs-baseline")


def _run_algorithm(task: PlanningTask, algorithm: str, max_bound: int,
                   timeout: float | None) -> SearchResult:
    if algorithm == "iter-tree":
        return iter_bound_search(task, "tree", max_bound=max_bound, timeout=timeout)
    if algorithm == "iter-graph":
        return iter_bound_search(task, "graph", max_bound=max_bound, timeout=timeout)
    if algorithm == "bfs-baseline":
        return baseline_bfs(task, timeout=timeout)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        task = load_task(Path(args.task))
    except (OSError, DocumentError, ModelError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    result = _run_algorithm(task, args.search, args.max_bound, args.timeout)
    if result.solved:
        if args.verify:
            check = verify_plan(task, result.plan)
            if not check:
                print(f"error: produced plan failed verification: {check.reason}",
                      file=sys.stderr)
                return 1
        for step in result.plan:
            print(step)
        print(f"bound: {result.stats.bound}")
        print(f"plan length: {len(result.plan)}")
        print(f"nodes expanded: {result.stats.nodes_expanded}")
        print(f"wall ms: {result.stats.wall_ms:.1f}")
        return 0
    print(f"no plan ({result.reason})", file=sys.stderr)
    return 1


def cmd_contract(args: argparse.Namespace) -> int:
    try:
        state = load_state(Path(args.state))
    except (OSError, DocumentError, ModelError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.method == "canonical":
        out = canonical_contraction(state, args.bound)
    elif args.method == "rooted":
        out = rooted_contraction(state, args.bound)
    elif args.method == "standard-b":
        out = standard_b_contraction(restrict(state, args.bound), args.bound)
    else:
        out = standard_contraction(state)
    edges = sum(len(r) for r in out.model.relations)
    print(f"worlds: {out.num_worlds}, edges: {edges}", file=sys.stderr)
    sys.stdout.write(print_state(out))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    try:
        a = load_state(Path(args.state_a))
        b = load_state(Path(args.state_b))
    except (OSError, DocumentError, ModelError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.bound == "full":
        same = bisimilar(a, b)
    else:
        try:
            bound = int(args.bound)
        except ValueError:
            print(f"error: bound must be a number or 'full', got {args.bound!r}",
                  file=sys.stderr)
            return 2
        same = b_bisimilar(a, b, bound)
    print("true" if same else "false")
    return 0 if same else 1


def _bench_one(path_str: str, algorithm: str, max_bound: int,
               timeout: float | None) -> dict:
    path = Path(path_str)
    task = load_task(path)
    result = _run_algorithm(task, algorithm, max_bound, timeout)
    model = task.initial.model
    return {
        "domain": path.parent.name,
        "instance": path.stem.removesuffix(".task"),
        "num_atoms": len(model.atoms),
        "num_agents": len(model.agents),
        "initial_worlds": model.num_worlds,
        "num_actions": len(task.actions),
        "goal_md": modal_depth(task.goal),
        "algorithm": algorithm,
        "plan_length": len(result.plan) if result.solved else "",
        "nodes_expanded": result.stats.nodes_expanded,
        "time_ms": f"{result.stats.wall_ms:.1f}",
        "solved": "true" if result.solved else "false",
    }


CSV_COLUMNS = ["domain", "instance", "num_atoms", "num_agents", "initial_worlds",
               "num_actions", "goal_md", "algorithm", "plan_length",
               "nodes_expanded", "time_ms", "solved"]


def cmd_bench(args: argparse.Namespace) -> int:
    suite = Path(args.suite)
    tasks = sorted(str(p) for p in suite.glob("**/*.task"))
    if not tasks:
        print(f"error: no .task files under {suite}", file=sys.stderr)
        return 2
    for alg in args.algorithms:
        if alg not in ALGORITHMS:
            print(f"error: unknown algorithm {alg!r}", file=sys.stderr)
            return 2
    jobs = [(t, alg) for t in tasks for alg in args.algorithms]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, [t for t, _ in jobs],
                                 [a for _, a in jobs],
                                 [args.max_bound] * len(jobs),
                                 [args.timeout] * len(jobs)))
    else:
        rows = [_bench_one(t, a, args.max_bound, args.timeout) for t, a in jobs]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deplan",
        description="Depth-bounded epistemic planner and contraction toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a planning task")
    p.add_argument("task", help="task document (.task)")
    p.add_argument("--search", choices=ALGORITHMS, default="iter-tree")
    p.add_argument("--max-bound", type=int, default=64)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.add_argument("--verify", action="store_true",
                   help="re-check the plan by uncontracted replay")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("contract", help="contract a state document")
    p.add_argument("state", help="state document")
    p.add_argument("--bound", type=int, default=0)
    p.add_argument("--method",
                   choices=("canonical", "rooted", "standard-b", "standard"),
                   default="canonical")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("check", help="test two states for (bounded) bisimilarity")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--bound", default="full", help="number or 'full'")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="run algorithms over a suite, write CSV")
    p.add_argument("suite", help="directory searched recursively for .task files")
    p.add_argument("--algorithms", nargs="+", default=["iter-tree", "bfs-baseline"])
    p.add_argument("--max-bound", type=int, default=64)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
