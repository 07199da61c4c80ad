"""Render figures from a benchmark CSV.

The CSV remains the data interface; these plots are a convenience layer
that draws effective cost against the estimated trace for each graph, plus
an accuracy panel when the exact column is present.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import read_csv

_STYLE = {"forest": dict(color="tab:green", marker="o"),
          "girard_cg": dict(color="tab:blue", marker="s"),
          "girard_direct": dict(color="tab:orange", marker="^"),
          "exact": dict(color="tab:gray", marker="x")}


def render_report(csv_path, out_dir):
    """Write one cost figure per graph (and an accuracy figure) as PNG.

    Returns the list of files written.
    """
    rows = [r for r in read_csv(csv_path) if not r.error]
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name in sorted({r.graph for r in rows}):
        sub = [r for r in rows if r.graph == name]
        fig, ax = plt.subplots(figsize=(5.5, 4))
        for method in sorted({r.method for r in sub}):
            pts = sorted((r.s_hat, r.cost_metric) for r in sub
                         if r.method == method and r.cost_metric > 0
                         and not math.isnan(r.s_hat))
            if not pts:
                continue
            ax.loglog([p[0] for p in pts], [p[1] for p in pts],
                      label=method, **_STYLE.get(method, {}))
        ax.set_xlabel("estimated s(q)")
        ax.set_ylabel("effective cost (work units)")
        ax.set_title(f"{name} (n={sub[0].n})")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, f"cost_{name}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    acc = [r for r in rows if not math.isnan(r.s_exact)
           and not math.isnan(r.s_hat) and r.method != "exact"]
    if acc:
        fig, ax = plt.subplots(figsize=(5.5, 4))
        for method in sorted({r.method for r in acc}):
            pts = [(r.s_exact, abs(r.s_hat - r.s_exact) / r.s_exact)
                   for r in acc if r.method == method and r.s_exact > 0]
            ax.loglog([p[0] for p in pts], [max(p[1], 1e-12) for p in pts],
                      linestyle="none", label=method,
                      **_STYLE.get(method, {}))
        ax.set_xlabel("exact s(q)")
        ax.set_ylabel("relative error")
        ax.set_title("pilot accuracy vs exact oracle")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, "accuracy.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
