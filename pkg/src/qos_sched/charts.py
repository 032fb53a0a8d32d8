"""Static SVG charts for bench results.

Rendering is a pure function of the CSV: re-rendering the same file yields
byte-identical SVG (the embedded creation date is dropped and matplotlib's
id hashing is salted with a fixed string). One chart per objective, task
count on the x axis, one series per solver showing the mean over seeds with
min/max whiskers.
"""

from __future__ import annotations

import os
from statistics import fmean

import matplotlib
from matplotlib.figure import Figure

from .bench import read_csv

HASHSALT = "qos-sched"

CHARTS = (
    ("time_objective", "makespan (s)", "time_vs_tasks.svg"),
    ("cost_objective", "cost (units)", "cost_vs_tasks.svg"),
    ("load_objective", "composite load", "load_vs_tasks.svg"),
)

SERIES_STYLE = {
    "bnb": {"color": "#1f77b4", "marker": "o"},
    "ga": {"color": "#d62728", "marker": "s"},
    "brute": {"color": "#2ca02c", "marker": "^"},
}


def render_charts(csv_path, out_dir) -> list[str]:
    """Render the three objective charts next to the CSV; returns the paths."""
    records = [r for r in read_csv(csv_path) if r.status == "ok"]
    os.makedirs(out_dir, exist_ok=True)

    solvers = sorted({r.solver for r in records})
    paths = []
    for attr, ylabel, filename in CHARTS:
        path = os.path.join(out_dir, filename)
        with matplotlib.rc_context({"svg.hashsalt": HASHSALT}):
            fig = Figure(figsize=(6.4, 4.2))
            ax = fig.subplots()
            for solver in solvers:
                by_n: dict[int, list[float]] = {}
                for r in records:
                    if r.solver != solver or getattr(r, attr) is None:
                        continue
                    by_n.setdefault(r.n_tasks, []).append(getattr(r, attr))
                if not by_n:
                    continue
                xs = sorted(by_n)
                means = [fmean(by_n[n]) for n in xs]
                lo = [means[k] - min(by_n[n]) for k, n in enumerate(xs)]
                hi = [max(by_n[n]) - means[k] for k, n in enumerate(xs)]
                style = SERIES_STYLE.get(solver, {"marker": "o"})
                ax.errorbar(
                    xs, means, yerr=[lo, hi], label=solver, capsize=3, **style
                )
            ax.set_xlabel("number of tasks")
            ax.set_ylabel(ylabel)
            ax.set_title(f"{ylabel} vs number of tasks (mean over seeds)")
            if solvers:
                ax.legend()
            ax.grid(True, alpha=0.3)
            fig.savefig(path, format="svg", metadata={"Date": None})
        paths.append(path)
    return paths
