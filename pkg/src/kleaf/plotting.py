"""Figures for the branching-vector report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .vectors import BOUND, RootReport  # noqa: E402


def plot_roots(report: RootReport, path) -> Path:
    """Bar chart of each branching rule's root against the target bound."""
    path = Path(path)
    rules = [r.rule for r in report.rows]
    roots = [r.root for r in report.rows]
    colors = ["tab:blue" if r.ok else "tab:red" for r in report.rows]

    fig, ax = plt.subplots(figsize=(10, 4))
    ax.bar([str(i) for i in rules], roots, color=colors)
    ax.axhline(BOUND, color="black", linestyle="--", linewidth=1, label=f"bound {BOUND:.6f}")
    ax.set_ylim(1.4, BOUND + 0.03)
    ax.set_xlabel("rule")
    ax.set_ylabel("root of branching vector")
    ax.legend(loc="lower right", bbox_to_anchor=(1.0, 1.0), frameon=False)
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
