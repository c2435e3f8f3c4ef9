"""Figure rendering for corpus reports.

Layouts come from networkx with a fixed seed so reruns produce the same
pictures.  The Agg backend is forced because reports render headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .graphs import Graph

LAYOUT_SEED = 7


def _to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nxg


def draw_graph(g: Graph, path, title: str | None = None):
    """Render one graph to an image file."""
    nxg = _to_networkx(g)
    pos = nx.spring_layout(nxg, seed=LAYOUT_SEED)
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    small = g.n <= 60
    nx.draw_networkx_edges(nxg, pos, ax=ax, edge_color="#7a7a7a", width=0.9)
    nx.draw_networkx_nodes(
        nxg,
        pos,
        ax=ax,
        node_size=140 if small else 30,
        node_color="#4878cf",
        linewidths=0.0,
    )
    if small:
        labels = {v: g.labels.get(v, str(v)) if g.labels else str(v) for v in range(g.n)}
        nx.draw_networkx_labels(nxg, pos, labels=labels, ax=ax, font_size=7, font_color="white")
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)


def draw_summary(rows, path):
    """Bar chart of pass/fail counts per check kind.

    ``rows`` are corpus result rows with ``check`` and ``passed``
    attributes.
    """
    counts: dict = {}
    for row in rows:
        ok, bad = counts.get(row.check, (0, 0))
        if row.passed:
            counts[row.check] = (ok + 1, bad)
        else:
            counts[row.check] = (ok, bad + 1)
    checks = sorted(counts)
    passed = [counts[c][0] for c in checks]
    failed = [counts[c][1] for c in checks]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * len(checks) + 2), 3.6))
    xs = range(len(checks))
    ax.bar(xs, passed, color="#2e7d32", label="pass")
    ax.bar(xs, failed, bottom=passed, color="#c62828", label="fail")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(checks, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("checks")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
