"""CSV tables and PNG figures for sweep results."""

from __future__ import annotations

import csv
from collections import Counter, defaultdict
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .oracle import CrossValidation  # noqa: E402
from .sweep import LabelingRun  # noqa: E402

CV_FIELDS = ("group", "order", "demand", "theorem", "oracle", "agree", "nodes")
LABEL_FIELDS = ("index", "n", "components", "group", "margin", "ok", "path", "fallback", "seconds", "error")
VERDICT_COLORS = {"feasible": "#4c72b0", "infeasible": "#dd8452", "unknown": "#8c8c8c"}


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def write_cross_validation_csv(rows: Sequence[CrossValidation], path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CV_FIELDS)
        for r in rows:
            d = r.to_json()
            d["order"] = r.group.order
            w.writerow([_cell(d[f]) for f in CV_FIELDS])
    return path


def write_labeling_csv(runs: Sequence[LabelingRun], path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(LABEL_FIELDS)
        for r in runs:
            d = r.to_json()
            w.writerow([_cell(d[f]) for f in LABEL_FIELDS])
    return path


def plot_verdicts(rows: Sequence[CrossValidation], path: Path) -> Path:
    """Oracle verdicts per group order, stacked, with disagreements marked."""
    by_order: dict[int, Counter] = defaultdict(Counter)
    bad: Counter = Counter()
    for r in rows:
        by_order[r.group.order][r.oracle] += 1
        if r.agree is False:
            bad[r.group.order] += 1
    orders = sorted(by_order)
    fig, ax = plt.subplots(figsize=(7, 3.6))
    bottom = [0] * len(orders)
    for verdict, color in VERDICT_COLORS.items():
        h = [by_order[o][verdict] for o in orders]
        ax.bar(orders, h, bottom=bottom, color=color, label=verdict, width=0.8)
        bottom = [b + x for b, x in zip(bottom, h)]
    if bad:
        ax.scatter(list(bad), [bottom[orders.index(o)] + 1 for o in bad], marker="x", color="crimson",
                   label="disagreement", zorder=3)
    ax.set_xlabel("|Γ|")
    ax.set_ylabel("demands")
    ax.set_title("oracle verdicts by group order")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_nodes(rows: Sequence[CrossValidation], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3.6))
    for verdict, color in VERDICT_COLORS.items():
        pts = [(r.group.order, max(r.nodes, 1)) for r in rows if r.oracle == verdict]
        if pts:
            ax.scatter(*zip(*pts), s=8, alpha=0.6, color=color, label=verdict)
    ax.set_yscale("log")
    ax.set_xlabel("|Γ|")
    ax.set_ylabel("search nodes")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_labeling(runs: Sequence[LabelingRun], path: Path) -> Path:
    """Runtime per labeling run against n, colored by success."""
    fig, ax = plt.subplots(figsize=(7, 3.6))
    for ok, color, label in ((True, "#55a868", "verified"), (False, "crimson", "failed")):
        pts = [(r.n, r.seconds * 1000) for r in runs if r.ok is ok]
        if pts:
            ax.scatter(*zip(*pts), s=10, alpha=0.7, color=color, label=label)
    ax.set_xlabel("n (vertices)")
    ax.set_ylabel("ms per labeling")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(
    out_dir: str | Path,
    rows: Sequence[CrossValidation] = (),
    runs: Sequence[LabelingRun] = (),
) -> list[Path]:
    """Write whichever tables and figures the given results support."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if rows:
        written += [
            write_cross_validation_csv(rows, out / "cross_validation.csv"),
            plot_verdicts(rows, out / "verdicts.png"),
            plot_nodes(rows, out / "oracle_nodes.png"),
        ]
    if runs:
        written += [write_labeling_csv(runs, out / "labelings.csv"), plot_labeling(runs, out / "labelings.png")]
    return written
