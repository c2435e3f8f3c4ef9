"""Hyperplanes of a connected graph and the machinery around them.

A hyperplane is an equivalence class of edges under the closure of two
elementary relations: being two sides of a common triangle, and being
opposite sides of a 4-cycle.  Deleting the edges of a class splits the
graph into sectors; the carrier is the subgraph spanned by the class's
endpoints, and its fibers are the components of the carrier minus the
class edges.  In a quasi-median graph each carrier is a product of a
fiber with a clique crossing the class, sectors are gated, and the
classes crossed by a path govern whether it is a geodesic; the functions
here compute all of these and verify the product structure explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

import numpy as np

from .errors import DisconnectedError
from .graphs import Graph, _bit_indices


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True, eq=False)
class HyperplaneDecomposition:
    """All hyperplane classes of a host graph, with the derived data.

    ``classes[j]`` lists the edges of class j as (u, v) pairs with u < v;
    classes are ordered by their smallest edge.  ``sector_ids[j][x]`` is
    the index of the sector of class j containing vertex x.
    """

    host: Graph
    classes: tuple
    edge_class: dict
    sectors: tuple
    sector_ids: tuple
    fibers: tuple
    carriers: tuple

    @property
    def k(self) -> int:
        return len(self.classes)


def compute_hyperplanes(g: Graph) -> HyperplaneDecomposition:
    """Partition the edges into hyperplane classes and derive sectors,
    fibers and carriers for each class."""
    if not g.is_connected():
        raise DisconnectedError("hyperplanes need a connected graph")
    edges = g.edges()
    eidx = {e: i for i, e in enumerate(edges)}
    uf = _UnionFind(len(edges))

    def key(u, v):
        return (u, v) if u < v else (v, u)

    # two sides of a triangle
    for u, v in edges:
        for w in _bit_indices(g.neighbor_bits(u) & g.neighbor_bits(v)):
            uf.union(eidx[(u, v)], eidx[key(u, w)])
            uf.union(eidx[(u, v)], eidx[key(v, w)])
    # opposite sides of a 4-cycle a-b-c-d
    for a in range(g.n):
        for c in range(a + 1, g.n):
            common = g.neighbor_bits(a) & g.neighbor_bits(c)
            if not (common & (common - 1)):
                continue
            members = _bit_indices(common)
            for i in range(len(members)):
                for jj in range(i + 1, len(members)):
                    b, d = members[i], members[jj]
                    uf.union(eidx[key(a, b)], eidx[key(c, d)])
                    uf.union(eidx[key(b, c)], eidx[key(a, d)])

    by_root: dict[int, list] = {}
    for e, i in eidx.items():
        by_root.setdefault(uf.find(i), []).append(e)
    classes = tuple(
        tuple(sorted(grp)) for grp in sorted(by_root.values(), key=lambda c: min(c))
    )
    edge_class = {e: j for j, grp in enumerate(classes) for e in grp}

    sectors = []
    sector_ids = []
    fibers = []
    carriers = []
    for j, grp in enumerate(classes):
        ids = _component_ids(g, edge_class, j, range(g.n))
        sector_ids.append(tuple(ids))
        sectors.append(_groups(ids, g.n))
        carrier = sorted({x for e in grp for x in e})
        carriers.append(frozenset(carrier))
        fid = _component_ids(g, edge_class, j, carrier)
        fibers.append(_groups(fid, g.n))
    return HyperplaneDecomposition(
        host=g,
        classes=classes,
        edge_class=edge_class,
        sectors=tuple(sectors),
        sector_ids=tuple(sector_ids),
        fibers=tuple(fibers),
        carriers=tuple(carriers),
    )


def _component_ids(g, edge_class, j, domain):
    """Component index per vertex of ``domain`` after deleting class-j
    edges, restricting edges to the domain; -1 outside the domain."""
    allowed = set(domain)
    ids = [-1] * g.n
    nxt = 0
    for s in sorted(allowed):
        if ids[s] != -1:
            continue
        stack = [s]
        ids[s] = nxt
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if v not in allowed or ids[v] != -1:
                    continue
                e = (u, v) if u < v else (v, u)
                if edge_class[e] == j:
                    continue
                ids[v] = nxt
                stack.append(v)
        nxt += 1
    return ids


def _groups(ids, n):
    out: dict[int, list] = {}
    for x in range(n):
        if ids[x] != -1:
            out.setdefault(ids[x], []).append(x)
    return tuple(frozenset(out[i]) for i in sorted(out))


# -- separation and geodesics ------------------------------------------


def separating_hyperplanes(d: HyperplaneDecomposition, x: int, y: int) -> frozenset:
    """Indices of the classes whose sectors separate x from y."""
    return frozenset(
        j for j in range(d.k) if d.sector_ids[j][x] != d.sector_ids[j][y]
    )


def separation_counts(d: HyperplaneDecomposition) -> np.ndarray:
    """Matrix counting, for every vertex pair, the separating classes.

    In a quasi-median host this equals the distance matrix.
    """
    n = d.host.n
    total = np.zeros((n, n), dtype=np.int64)
    for ids in d.sector_ids:
        arr = np.asarray(ids)
        total += arr[:, None] != arr[None, :]
    return total


def is_geodesic(d: HyperplaneDecomposition, path) -> tuple:
    """Whether a path crosses no class twice; returns (flag, class or None).

    The path is a vertex sequence with consecutive vertices adjacent.
    """
    path = list(path)
    if not path:
        raise ValueError("path must contain at least one vertex")
    seen = set()
    for a, b in zip(path, path[1:]):
        if not d.host.adjacent(a, b):
            raise ValueError(f"{a} and {b} are not adjacent")
        j = d.edge_class[(a, b) if a < b else (b, a)]
        if j in seen:
            return (False, j)
        seen.add(j)
    return (True, None)


# -- gates -------------------------------------------------------------


@dataclass(frozen=True)
class GateResult:
    """Outcome of a gate computation.

    On failure ``witness`` is either ("tie", y1, y2) for two nearest
    vertices or ("detour", y, z) when the unique nearest y fails
    d(x, y) + d(y, z) = d(x, z) for some z in the set.
    """

    gate: int | None
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.gate is not None


def gate(g: Graph, subset, x: int) -> GateResult:
    """Gate of x in ``subset``: the vertex of the subset through which
    every geodesic from x can be routed, when it exists."""
    ys = sorted(set(subset))
    if not ys:
        raise ValueError("gate of an empty set is undefined")
    dx = g.bfs_distances(x)
    best = min(dx[y] for y in ys)
    nearest = [y for y in ys if dx[y] == best]
    if len(nearest) > 1:
        return GateResult(None, ("tie", nearest[0], nearest[1]))
    y0 = nearest[0]
    dy = g.bfs_distances(y0)
    for z in ys:
        if dx[y0] + dy[z] != dx[z]:
            return GateResult(None, ("detour", y0, z))
    return GateResult(y0)


def is_gated(g: Graph, subset, dist: np.ndarray | None = None) -> bool:
    """Whether every vertex of g has a gate in ``subset``.

    Vectorised over all basepoints; pass a precomputed distance matrix to
    amortise the metric across many calls.
    """
    ys = sorted(set(subset))
    if not ys:
        raise ValueError("gatedness of an empty set is undefined")
    if dist is None:
        dist = g.distance_matrix()
    a = dist[:, ys]
    m = a.min(axis=1)
    unique = (a == m[:, None]).sum(axis=1) == 1
    dy = dist[np.ix_(ys, ys)]
    through = m[:, None] + dy[a.argmin(axis=1)]
    return bool((unique & (a == through).all(axis=1)).all())


# -- carrier structure -------------------------------------------------


@dataclass(frozen=True)
class CarrierReport:
    """Explicit product structure of one carrier, or why it failed."""

    ok: bool
    fiber: tuple
    clique: tuple
    reason: str | None = None


def verify_carrier_decomposition(
    d: HyperplaneDecomposition, j: int
) -> CarrierReport:
    """Check that carrier(j) is a fiber-times-clique product.

    Builds the natural map sending x to (its fiber's meeting point with a
    reference fiber F, the clique vertex sharing x's fiber) and verifies
    it is an adjacency-preserving bijection onto F x C, where C is the
    class-j clique at the smallest carrier vertex.
    """
    g = d.host
    carrier = sorted(d.carriers[j])
    fibs = d.fibers[j]
    fiber_id = {}
    for i, f in enumerate(fibs):
        for x in f:
            fiber_id[x] = i

    def j_clique(x):
        members = {x}
        for u, v in d.classes[j]:
            if u == x:
                members.add(v)
            elif v == x:
                members.add(u)
        return sorted(members)

    c = j_clique(carrier[0])
    for a_i in range(len(c)):
        for b_i in range(a_i + 1, len(c)):
            a, b = c[a_i], c[b_i]
            if d.edge_class.get((a, b)) != j:
                return CarrierReport(
                    False, (), tuple(c), f"clique pair {(a, b)} not a class edge"
                )
    if len(c) != len(fibs):
        return CarrierReport(
            False, (), tuple(c), f"clique size {len(c)} != fiber count {len(fibs)}"
        )
    cvert_by_fiber = {}
    for v in c:
        fi = fiber_id[v]
        if fi in cvert_by_fiber:
            return CarrierReport(
                False, (), tuple(c), f"clique meets fiber {fi} twice"
            )
        cvert_by_fiber[fi] = v

    f0 = sorted(fibs[0])
    fpos = {x: i for i, x in enumerate(f0)}
    coords = []
    for x in carrier:
        kx = j_clique(x)
        meet = [y for y in kx if y in fpos]
        if len(meet) != 1:
            return CarrierReport(
                False,
                tuple(f0),
                tuple(c),
                f"clique at {x} meets the reference fiber {len(meet)} times",
            )
        coords.append((fpos[meet[0]], c.index(cvert_by_fiber[fiber_id[x]])))
    if len(set(coords)) != len(carrier) or len(carrier) != len(f0) * len(c):
        return CarrierReport(False, tuple(f0), tuple(c), "coordinate map not a bijection")

    fc = np.array([p[0] for p in coords])
    cc = np.array([p[1] for p in coords])
    adj = g.adjacency_matrix()
    fiber_adj = adj[np.ix_(f0, f0)]
    want = ((fc[:, None] == fc[None, :]) & (cc[:, None] != cc[None, :])) | (
        (cc[:, None] == cc[None, :]) & fiber_adj[np.ix_(fc, fc)]
    )
    have = adj[np.ix_(carrier, carrier)]
    if not (want == have).all():
        return CarrierReport(False, tuple(f0), tuple(c), "adjacency mismatch")
    return CarrierReport(True, tuple(f0), tuple(c))


# -- transversality ----------------------------------------------------


def are_transverse(d: HyperplaneDecomposition, j1: int, j2: int) -> bool:
    """Whether classes j1 and j2 cross: some 4-cycle has opposite sides
    in j1 and its other two sides in j2."""
    if j1 == j2:
        raise ValueError("transversality needs two distinct classes")
    g = d.host
    if len(d.classes[j2]) < len(d.classes[j1]):
        j1, j2 = j2, j1
    for a, b in d.classes[j1]:
        for x, y in ((a, b), (b, a)):
            for cvert in g.neighbors(y):
                e = (y, cvert) if y < cvert else (cvert, y)
                if d.edge_class[e] != j2:
                    continue
                if g.neighbor_bits(x) & g.neighbor_bits(cvert) & ~(1 << y):
                    return True
    return False


def crossing_graph(d: HyperplaneDecomposition) -> Graph:
    """One vertex per class, edges between transverse pairs."""
    edges = [
        (j1, j2)
        for j1 in range(d.k)
        for j2 in range(j1 + 1, d.k)
        if are_transverse(d, j1, j2)
    ]
    return Graph(d.k, edges, labels={j: f"J{j}" for j in range(d.k)})
