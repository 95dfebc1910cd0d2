"""Figures written next to the delimited outputs of the bench and census commands."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows: Sequence, fit, path: str | Path) -> Path:
    """Decision time against n on log-log axes, with the fitted line."""
    path = Path(path)
    ns = [r.n for r in rows]
    ts = [r.seconds for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.loglog(ns, ts, "o", label="measured")
    if fit is not None:
        lo, hi = min(ns), max(ns)
        grid = [lo * (hi / lo) ** (i / 50) for i in range(51)] if hi > lo else [lo]
        ax1.loglog(grid, [fit.slope * x + fit.intercept for x in grid], "-", label="a n + b")
    ax1.set_xlabel("n")
    ax1.set_ylabel("seconds")
    ax1.legend()
    ax2.semilogx(ns, [r.per_vertex * 1e6 for r in rows], "s-")
    ax2.set_xlabel("n")
    ax2.set_ylabel("microseconds per vertex")
    fam = rows[0].family if rows else ""
    k = rows[0].k if rows else ""
    fig.suptitle(f"decide l <= {k} on family {fam}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_census(counts: Mapping[str, int], total: int, path: str | Path, title: str = "") -> Path:
    """Horizontal bars: how many digraphs have each property."""
    path = Path(path)
    names = list(counts)
    fig, ax = plt.subplots(figsize=(7, 0.28 * len(names) + 1.2))
    ax.barh(names, [counts[k] for k in names])
    ax.invert_yaxis()
    ax.set_xlabel(f"digraphs with the property (of {total})")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
