"""Finite simple graphs and the combinatorial primitives the rest of the
package builds on: traversal, metric intervals, Cartesian products,
induced-pattern search, isomorphism, and clique enumeration.

Vertices are dense integer indices ``0..n-1``.  Adjacency is stored twice:
as bitset rows (Python ints, so induced-subgraph tests are single AND
operations) and as sorted neighbour tuples for traversal.  Graphs are
immutable and every function here treats its arguments as read-only.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from math import inf

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import DisconnectedError, SchemaError


def _bit_indices(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Graph:
    """Immutable finite simple undirected graph.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.neighbors(1)
    (0, 2)
    >>> g.adjacent(0, 2)
    False
    """

    __slots__ = ("n", "labels", "_bits", "_nbrs", "_dist", "_adj")

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        bits = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self.n = n
        self._bits = bits
        self._nbrs = tuple(tuple(_bit_indices(b)) for b in bits)
        self.labels = dict(labels) if labels else None
        self._dist = None
        self._adj = None

    # -- basic queries -------------------------------------------------

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._bits[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def neighbor_bits(self, v: int) -> int:
        return self._bits[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self._nbrs[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(t) for t in self._nbrs) // 2

    # -- metric --------------------------------------------------------

    def bfs_distances(self, source: int) -> list:
        """Distances from ``source``; unreachable vertices get ``inf``."""
        dist = [inf] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for v in self._nbrs[u]:
                if dist[v] is inf:
                    dist[v] = du
                    queue.append(v)
        return dist

    def distance_matrix(self) -> np.ndarray:
        """All-pairs distances as a float array, cached; ``inf`` marks
        unreachable pairs."""
        if self._dist is None:
            if self.n == 0:
                self._dist = np.zeros((0, 0))
            else:
                es = self.edges()
                rows = [u for u, _ in es] + [v for _, v in es]
                cols = [v for _, v in es] + [u for u, _ in es]
                mat = csr_matrix(
                    (np.ones(len(rows)), (rows, cols)), shape=(self.n, self.n)
                )
                self._dist = shortest_path(mat, method="D", unweighted=True)
        return self._dist

    def adjacency_matrix(self) -> np.ndarray:
        """Boolean adjacency matrix, cached."""
        if self._adj is None:
            arr = np.zeros((self.n, self.n), dtype=bool)
            for u in range(self.n):
                nb = self._nbrs[u]
                if nb:
                    arr[u, list(nb)] = True
            self._adj = arr
        return self._adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return inf not in self.bfs_distances(0)

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._bits == other._bits

    def __hash__(self):
        return hash((self.n, tuple(self._bits)))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"


# -- derived structures ------------------------------------------------


def connected_components(g: Graph) -> list[frozenset]:
    """Components as vertex sets, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(frozenset(comp))
    return comps


def interval(g: Graph, u: int, v: int) -> frozenset:
    """Vertices on some geodesic between u and v.

    >>> sorted(interval(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 0, 2))
    [0, 1, 2, 3]
    """
    du = g.bfs_distances(u)
    if du[v] is inf:
        raise DisconnectedError(f"vertices {u} and {v} are in different components")
    dv = g.bfs_distances(v)
    d = du[v]
    return frozenset(w for w in range(g.n) if du[w] + dv[w] == d)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (a, b) becomes index ``a * h.n + b``."""
    edges = []
    for a in range(g.n):
        for b, b2 in h.edges():
            edges.append((a * h.n + b, a * h.n + b2))
    for a, a2 in g.edges():
        for b in range(h.n):
            edges.append((a * h.n + b, a2 * h.n + b))
    return Graph(g.n * h.n, edges)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, list[int]]:
    """Induced subgraph plus the new-index-to-old-index map."""
    verts = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(verts)}
    edges = [
        (pos[u], pos[v]) for u, v in combinations(verts, 2) if g.adjacent(u, v)
    ]
    sub = Graph(len(verts), edges)
    return sub, verts


# -- pattern search ----------------------------------------------------

_PATTERNS = {
    # K4 minus one edge: vertices 2, 3 are the non-adjacent pair
    "K4minus": (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)), (0, 1, 2, 3)),
    # complete bipartite 3 + 2: the 2-side first for early pruning
    "K32": (5, ((0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)), (3, 4, 0, 1, 2)),
}


def pattern_graph(name: str) -> Graph:
    k, pedges, _ = _PATTERNS[name]
    return Graph(k, pedges)


def find_induced_embedding(host: Graph, pattern: Graph, order=None):
    """First induced copy of ``pattern`` in ``host``, or None.

    Returns a tuple mapping pattern vertex i to a host vertex.  The search
    assigns pattern vertices in ``order`` (default 0..k-1) and tries host
    vertices in ascending order, so the result is deterministic.
    """
    k = pattern.n
    if host.n < k:
        return None
    order = list(order) if order is not None else list(range(k))
    pdeg = [pattern.degree(i) for i in range(k)]
    assign = [-1] * k
    full = (1 << host.n) - 1

    def rec(pos, used):
        if pos == k:
            return tuple(assign)
        i = order[pos]
        cand = full & ~used
        for j in order[:pos]:
            if pattern.adjacent(i, j):
                cand &= host.neighbor_bits(assign[j])
            else:
                cand &= ~host.neighbor_bits(assign[j])
        for x in _bit_indices(cand):
            if host.degree(x) < pdeg[i]:
                continue
            assign[i] = x
            res = rec(pos + 1, used | (1 << x))
            if res is not None:
                return res
        assign[i] = -1
        return None

    return rec(0, 0)


def find_forbidden_subgraph(g: Graph, pattern: str):
    """First induced K4minus or K32, as a pattern-vertex-to-host tuple."""
    if pattern not in _PATTERNS:
        raise ValueError(f"unknown pattern {pattern!r}")
    k, pedges, order = _PATTERNS[pattern]
    return find_induced_embedding(g, Graph(k, pedges), order)


def find_isomorphism(g: Graph, h: Graph):
    """A vertex bijection g -> h preserving adjacency both ways, or None."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    if sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return None
    # order g's vertices so each one touches as many already-placed
    # vertices as possible, which keeps the candidate sets small
    order: list[int] = []
    placed = set()
    while len(order) < g.n:
        best = max(
            (v for v in range(g.n) if v not in placed),
            key=lambda v: (
                sum(1 for u in g.neighbors(v) if u in placed),
                g.degree(v),
                -v,
            ),
        )
        order.append(best)
        placed.add(best)
    assign = [-1] * g.n
    full = (1 << h.n) - 1

    def rec(pos, used):
        if pos == g.n:
            return list(assign)
        i = order[pos]
        cand = full & ~used
        for j in order[:pos]:
            if g.adjacent(i, j):
                cand &= h.neighbor_bits(assign[j])
            else:
                cand &= ~h.neighbor_bits(assign[j])
        di = g.degree(i)
        for x in _bit_indices(cand):
            if h.degree(x) != di:
                continue
            assign[i] = x
            res = rec(pos + 1, used | (1 << x))
            if res is not None:
                return res
        assign[i] = -1
        return None

    return rec(0, 0)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    out = []
    nb = g._bits

    def bk(r, p, x):
        if not p and not x:
            out.append(tuple(_bit_indices(r)))
            return
        pivot = max(_bit_indices(p | x), key=lambda v: (p & nb[v]).bit_count())
        for v in _bit_indices(p & ~nb[pivot]):
            bk(r | 1 << v, p & nb[v], x & nb[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        bk(0, (1 << g.n) - 1, 0)
    return sorted(out)


# -- serialisation -----------------------------------------------------


def graph_from_json(obj) -> Graph:
    """Parse ``{"vertices": n, "edges": [[u, v], ...], "labels": {...}}``."""
    if not isinstance(obj, dict):
        raise SchemaError("graph document must be a JSON object")
    if "vertices" not in obj or "edges" not in obj:
        raise SchemaError("graph document needs 'vertices' and 'edges' keys")
    n = obj["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SchemaError("'vertices' must be a nonnegative integer")
    raw_edges = obj["edges"]
    if not isinstance(raw_edges, list):
        raise SchemaError("'edges' must be a list of [u, v] pairs")
    edges = []
    for e in raw_edges:
        if (
            not isinstance(e, (list, tuple))
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise SchemaError(f"bad edge entry {e!r}")
        edges.append((e[0], e[1]))
    labels = None
    if "labels" in obj and obj["labels"] is not None:
        raw = obj["labels"]
        if not isinstance(raw, dict):
            raise SchemaError("'labels' must be an object")
        labels = {}
        for k, v in raw.items():
            try:
                idx = int(k)
            except (TypeError, ValueError):
                raise SchemaError(f"label key {k!r} is not a vertex index")
            if not 0 <= idx < n:
                raise SchemaError(f"label key {k!r} out of range")
            labels[idx] = str(v)
    try:
        return Graph(n, edges, labels)
    except ValueError as exc:
        raise SchemaError(str(exc))


def graph_to_json(g: Graph) -> dict:
    obj = {"vertices": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels:
        obj["labels"] = {str(k): g.labels[k] for k in sorted(g.labels)}
    return obj


def to_dot(g: Graph, name: str = "G") -> str:
    """Graphviz text form; labels become node labels when present."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = g.labels.get(v) if g.labels else None
        if label is not None:
            esc = label.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {v} [label="{esc}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
