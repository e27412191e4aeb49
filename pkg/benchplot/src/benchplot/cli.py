"""Turn a benchmark CSV (the planner's `bench` output schema) into a runtime
comparison chart, one line per algorithm, and print the speedup of the
bound-deepening search over the BFS baseline.

Reads only the documented CSV columns; no coupling to the planner itself.
"""
from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

REQUIRED_COLUMNS = ("domain", "instance", "algorithm", "nodes_expanded",
                    "time_ms", "solved")
BASELINE = "bfs-baseline"


class SchemaError(ValueError):
    pass


def load_rows(csv_path: str | Path) -> list[dict]:
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise SchemaError(f"missing column: {col}")
        return list(reader)


def plot(csv_path: str | Path, out_image: str | Path,
         group_by: str = "domain", out=None) -> None:
    """Write the chart and print per-group mean speedup factors.

    Instances are placed on the x-axis sorted by the baseline's
    nodes_expanded (a machine-independent size proxy); the y-axis is solve
    time in milliseconds on a log scale.
    """
    if out is None:
        out = sys.stdout
    rows = [r for r in load_rows(csv_path) if r["solved"] == "true"]
    if not rows:
        raise SchemaError("no solved rows in CSV")
    groups: dict[str, list[dict]] = defaultdict(list)
    for r in rows:
        groups[r[group_by]].append(r)

    fig, axes = plt.subplots(1, len(groups), squeeze=False,
                             figsize=(6 * len(groups), 4.5))
    for ax, (group, grows) in zip(axes[0], sorted(groups.items())):
        size = {}
        for r in grows:
            key = r["instance"]
            size[key] = max(size.get(key, 0), int(r["nodes_expanded"]))
        order = sorted(size, key=lambda k: (size[k], k))
        xpos = {k: i for i, k in enumerate(order)}
        by_alg: dict[str, dict[str, float]] = defaultdict(dict)
        for r in grows:
            by_alg[r["algorithm"]][r["instance"]] = float(r["time_ms"])
        for alg in sorted(by_alg):
            xs = [xpos[k] for k in order if k in by_alg[alg]]
            ys = [by_alg[alg][k] for k in order if k in by_alg[alg]]
            ax.plot(xs, ys, marker="o", label=alg)
        ax.set_yscale("log")
        ax.set_xticks(range(len(order)))
        ax.set_xticklabels(order, rotation=45, ha="right")
        ax.set_ylabel("time (ms)")
        ax.set_title(group)
        ax.legend()

        base = by_alg.get(BASELINE, {})
        for alg in sorted(by_alg):
            if alg == BASELINE:
                continue
            ratios = [base[k] / by_alg[alg][k] for k in by_alg[alg]
                      if k in base and by_alg[alg][k] > 0]
            for k in order:
                if k in base and k in by_alg[alg] and by_alg[alg][k] > 0:
                    print(f"{group}/{k}: {alg} speedup "
                          f"{base[k] / by_alg[alg][k]:.2f}", file=out)
            if ratios:
                mean = sum(ratios) / len(ratios)
                print(f"{group}: mean {alg} speedup {mean:.2f} "
                      f"over {BASELINE}", file=out)
    fig.tight_layout()
    fig.savefig(out_image)
    plt.close(fig)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="benchplot",
        description="Render a solver runtime comparison chart from bench CSV.")
    parser.add_argument("csv", help="bench CSV file")
    parser.add_argument("--out", default="bench.png", help="output image path")
    parser.add_argument("--group-by", default="domain",
                        help="column to split subplots by")
    args = parser.parse_args(argv)
    try:
        plot(args.csv, args.out, args.group_by)
    except (OSError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
