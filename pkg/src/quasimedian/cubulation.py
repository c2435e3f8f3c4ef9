"""Dual cube complex of the wallspace carried by a graph.

Each hyperplane sector and its complement form a wall.  An orientation
picks one side of every wall so that chosen sides pairwise intersect;
vertices of the dual complex are the consistent orientations, joined
when they differ on a single wall.  Principal orientations (all sides
containing a fixed host vertex) embed the host, and the report below
measures how far that embedding is from an isometry.

Orientations are wall-indexed bitmasks: bit i clear means the sector
side of wall i, set means the complement side.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .graphs import Graph
from .hyperplanes import HyperplaneDecomposition, compute_hyperplanes

ORACLE_WALL_LIMIT = 22


@dataclass(frozen=True, eq=False)
class Wallspace:
    """Deduplicated walls of a host graph.

    ``sides[i]`` is a pair of disjoint covering vertex bitmasks;
    ``sources[i]`` records the (class, sector) pair the wall came from.
    """

    host: Graph
    sides: tuple
    sources: tuple

    @property
    def k(self) -> int:
        return len(self.sides)


def walls_from_graph(
    g: Graph, decomposition: HyperplaneDecomposition | None = None
) -> Wallspace:
    """One wall per distinct (sector, complement) bipartition.

    Walls whose complement would be empty are dropped; both sides of
    every emitted wall are nonempty.
    """
    d = decomposition if decomposition is not None else compute_hyperplanes(g)
    full = (1 << g.n) - 1
    seen = set()
    sides = []
    sources = []
    for j in range(d.k):
        for si, sector in enumerate(d.sectors[j]):
            m0 = 0
            for x in sector:
                m0 |= 1 << x
            m1 = full & ~m0
            if m1 == 0:
                continue
            key = (m0, m1) if m0 < m1 else (m1, m0)
            if key in seen:
                continue
            seen.add(key)
            sides.append((m0, m1))
            sources.append((j, si))
    return Wallspace(g, tuple(sides), tuple(sources))


def principal_orientation(ws: Wallspace, x: int) -> int:
    """Orientation choosing, on every wall, the side containing x."""
    o = 0
    for i, (m0, _) in enumerate(ws.sides):
        if not m0 >> x & 1:
            o |= 1 << i
    return o


def is_consistent(ws: Wallspace, o: int) -> bool:
    """Whether the chosen sides pairwise intersect."""
    chosen = [ws.sides[i][o >> i & 1] for i in range(ws.k)]
    for i in range(len(chosen)):
        for j in range(i + 1, len(chosen)):
            if not chosen[i] & chosen[j]:
                return False
    return True


def orientation_to_tuple(ws: Wallspace, o: int) -> tuple:
    return tuple(o >> i & 1 for i in range(ws.k))


@dataclass(frozen=True, eq=False)
class Cubulation:
    """1-skeleton of the dual complex.

    ``orientations[i]`` is the orientation mask of cube vertex i and
    ``vertex_map[x]`` the cube vertex of the principal orientation at
    host vertex x.
    """

    wallspace: Wallspace
    graph: Graph
    orientations: tuple
    vertex_map: tuple


def cubulate(ws: Wallspace, cap: int = 200_000) -> Cubulation:
    """All consistent orientations reachable by single-wall flips from
    the principal ones, with flip edges.

    For finite wallspaces this reaches every consistent orientation; the
    exhaustive filter in ``all_consistent_orientations`` exists to keep
    that claim honest on small inputs.
    """
    w = ws.k
    sides = ws.sides
    principals = [principal_orientation(ws, x) for x in range(ws.host.n)]
    index: dict = {}
    orients: list = []
    queue = deque()
    for o in principals:
        if o not in index:
            index[o] = len(orients)
            orients.append(o)
            if len(orients) > cap:
                raise CapExceeded(f"cube vertex count exceeds cap {cap}")
            queue.append(o)
    edges = set()
    while queue:
        o = queue.popleft()
        i = index[o]
        chosen = [sides[t][o >> t & 1] for t in range(w)]
        for t in range(w):
            flipped = sides[t][1 ^ (o >> t & 1)]
            if any(
                not (flipped & chosen[u]) for u in range(w) if u != t
            ):
                continue
            o2 = o ^ (1 << t)
            j = index.get(o2)
            if j is None:
                j = len(orients)
                index[o2] = j
                orients.append(o2)
                if len(orients) > cap:
                    raise CapExceeded(f"cube vertex count exceeds cap {cap}")
                queue.append(o2)
            edges.add((min(i, j), max(i, j)))
    graph = Graph(len(orients), sorted(edges))
    return Cubulation(
        ws, graph, tuple(orients), tuple(index[p] for p in principals)
    )


def all_consistent_orientations(ws: Wallspace) -> list:
    """Exhaustive filter over every side assignment; oracle for
    ``cubulate``, so it refuses large wall counts outright."""
    w = ws.k
    if w > ORACLE_WALL_LIMIT:
        raise CapExceeded(
            f"{w} walls is past the exhaustive limit {ORACLE_WALL_LIMIT}"
        )
    arr = np.arange(1 << w, dtype=np.int64)
    keep = np.ones(1 << w, dtype=bool)
    for i in range(w):
        bi = arr >> i & 1
        for j in range(i + 1, w):
            bad_combos = [
                (si, sj)
                for si in (0, 1)
                for sj in (0, 1)
                if not ws.sides[i][si] & ws.sides[j][sj]
            ]
            if not bad_combos:
                continue
            bj = arr >> j & 1
            for si, sj in bad_combos:
                keep &= ~((bi == si) & (bj == sj))
    return [int(o) for o in np.flatnonzero(keep)]


def wall_separation_counts(ws: Wallspace) -> np.ndarray:
    """Matrix counting walls separating each host vertex pair."""
    n = ws.host.n
    total = np.zeros((n, n), dtype=np.int64)
    for m0, _ in ws.sides:
        row = np.fromiter(
            ((m0 >> x) & 1 for x in range(n)), dtype=np.int64, count=n
        )
        total += row[:, None] != row[None, :]
    return total


def quasi_isometry_report(cub: Cubulation) -> dict:
    """Distortion of the principal embedding of the host in the cube
    graph: additive error, multiplicative bound, coboundedness radius."""
    host = cub.wallspace.host
    dg = host.distance_matrix()
    dc = cub.graph.distance_matrix()
    vm = list(cub.vertex_map)
    mapped = dc[np.ix_(vm, vm)]
    report = {
        "host_vertices": host.n,
        "cube_vertices": cub.graph.n,
        "walls": cub.wallspace.k,
    }
    diff = np.abs(mapped - dg)
    report["max_additive_error"] = int(diff.max()) if host.n else 0
    off = ~np.eye(host.n, dtype=bool)
    if off.any():
        hd = dg[off]
        md = mapped[off]
        if (md == 0).any():
            report["multiplicative_lambda"] = None
        else:
            lam = max(float((md / hd).max()), float((hd / md).max()))
            report["multiplicative_lambda"] = lam
    else:
        report["multiplicative_lambda"] = 1.0
    report["cobounded_radius"] = (
        int(dc[:, vm].min(axis=1).max()) if cub.graph.n else 0
    )
    return report
