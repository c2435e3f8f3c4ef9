"""Graph of wreaths over a median host graph.

A wreath pairs a nonempty convex support inside the host with a lamp
coloring: a finitely supported map from a fixed lamp set into a finite
lamp group.  Two wreaths are adjacent when either

* the colorings agree and exactly one hyperplane class crosses one
  support but not the other, with the smaller support being a connected
  component of the larger one after deleting that class's edges (the
  support grew or shrank by one hyperplane and stayed convex), or
* the supports agree and the colorings differ at exactly one lamp
  inside the support.

The move condition above is strictly stronger than just counting the
hyperplane symmetric difference; pairs that satisfy the count but fail
the component condition are tallied on the built graph and logged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import CapExceeded, DomainError, NotMedianError, SchemaError
from .graph_products import FiniteGroup
from .graphs import Graph, _bit_indices, graph_from_json
from .hyperplanes import HyperplaneDecomposition, compute_hyperplanes
from .recognition import is_median

logger = logging.getLogger(__name__)

ENUMERATION_VERTEX_LIMIT = 20


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), 0, (0,))


@dataclass(frozen=True, eq=False)
class WreathConfig:
    """Host graph, lamp locations and lamp group for a wreath family."""

    host: Graph
    omega: tuple
    group: FiniteGroup

    @classmethod
    def create(cls, host: Graph, omega, group: FiniteGroup) -> "WreathConfig":
        verdict = is_median(host)
        if not verdict.positive:
            raise NotMedianError(
                f"wreath host must be a median graph, got {verdict.status.value}"
            )
        pts = sorted(set(omega))
        if not pts:
            raise DomainError("the lamp set must be nonempty")
        if not all(0 <= p < host.n for p in pts):
            raise DomainError("lamp locations must be host vertices")
        if not isinstance(group, FiniteGroup):
            raise DomainError("the lamp group must be finite")
        return cls(host, tuple(pts), group)

    def is_convex(self, vertices) -> bool:
        verts = sorted(vertices)
        members = set(verts)
        d = self.host.distance_matrix()
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                u, v = verts[i], verts[j]
                duv = d[u][v]
                for w in range(self.host.n):
                    if w not in members and d[u][w] + d[w][v] == duv:
                        return False
        return True


@dataclass(frozen=True, eq=False)
class Wreath:
    """One vertex of the graph of wreaths.

    ``coloring`` keeps only the lamps with non-identity colors, as
    sorted (point, element) pairs.  Instances built through ``create``
    are validated; the bulk constructor below skips revalidation.
    """

    config: WreathConfig
    support: frozenset
    coloring: tuple

    @classmethod
    def create(cls, config: WreathConfig, support, coloring) -> "Wreath":
        supp = frozenset(int(x) for x in support)
        if not supp:
            raise DomainError("a wreath support must be nonempty")
        if not all(0 <= x < config.host.n for x in supp):
            raise DomainError("support vertex out of range")
        if not config.is_convex(supp):
            raise DomainError(f"support {sorted(supp)} is not convex in the host")
        pairs = []
        if hasattr(coloring, "items"):
            items = coloring.items()
        else:
            items = list(coloring)
        seen = set()
        for p, e in items:
            if p not in config.omega:
                raise DomainError(f"colored point {p} is not a lamp")
            if p in seen:
                raise DomainError(f"point {p} colored twice")
            seen.add(p)
            if not config.group.contains(e):
                raise DomainError(f"color {e!r} not in the lamp group")
            if e != config.group.identity:
                pairs.append((p, e))
        return cls(config, supp, tuple(sorted(pairs)))

    def color_at(self, p: int) -> int:
        for q, e in self.coloring:
            if q == p:
                return e
        return self.config.group.identity


def enumerate_convex_supports(host: Graph, cap: int = 100_000) -> list:
    """All nonempty convex vertex sets, ordered by their bitmask."""
    n = host.n
    if n > ENUMERATION_VERTEX_LIMIT:
        raise CapExceeded(
            f"convex enumeration over {n} vertices is past the limit "
            f"{ENUMERATION_VERTEX_LIMIT}"
        )
    d = host.distance_matrix().astype(int).tolist()
    imask = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            m = 0
            for w in range(n):
                if d[u][w] + d[w][v] == d[u][v]:
                    m |= 1 << w
            imask[u][v] = m
    out = []
    for mask in range(1, 1 << n):
        verts = _bit_indices(mask)
        ok = True
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                if imask[verts[i]][verts[j]] & ~mask:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(verts))
            if len(out) > cap:
                raise CapExceeded(f"convex support count exceeds cap {cap}")
    return out


def hyperplane_set(d: HyperplaneDecomposition, support) -> frozenset:
    """Classes with at least one edge inside the support."""
    supp = set(support)
    return frozenset(
        j
        for j, grp in enumerate(d.classes)
        if any(u in supp and v in supp for u, v in grp)
    )


def _component_of(d, j, big, start) -> frozenset:
    """Component of ``start`` in the subgraph induced on ``big`` minus
    the edges of class j."""
    comp = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in d.host.neighbors(u):
            if v in comp or v not in big:
                continue
            e = (u, v) if u < v else (v, u)
            if d.edge_class[e] == j:
                continue
            comp.add(v)
            stack.append(v)
    return frozenset(comp)


def _move_pair(d, s1, h1, s2, h2) -> tuple:
    """(naive, actual): naive is the symmetric-difference count test,
    actual additionally demands the smaller support be a component of
    the larger minus the distinguished class."""
    sym = h1 ^ h2
    if len(sym) != 1:
        return False, False
    (j,) = sym
    big, small = (s1, s2) if j in h1 else (s2, s1)
    if not small < big:
        return True, False
    comp = _component_of(d, j, big, min(small))
    return True, comp == small


@dataclass(eq=False)
class WreathGraphResult:
    """The graph of wreaths with its index tables.

    Vertex ``s * colorings + c`` is support index s with coloring index
    c; colorings enumerate lamp tuples in big-endian base group-order
    over the sorted lamp set.  ``naive_mismatch_pairs`` counts support
    pairs passing the hyperplane-count test but failing the component
    condition.
    """

    config: WreathConfig
    graph: Graph
    supports: tuple
    decomposition: HyperplaneDecomposition
    move_pairs: tuple
    naive_mismatch_pairs: int

    @property
    def coloring_count(self) -> int:
        return self.config.group.order ** len(self.config.omega)

    def coloring_index(self, wreath_or_pairs) -> int:
        pairs = (
            wreath_or_pairs.coloring
            if isinstance(wreath_or_pairs, Wreath)
            else tuple(wreath_or_pairs)
        )
        lookup = dict(pairs)
        omega = self.config.omega
        q = self.config.group.order
        c = 0
        for p in omega:
            c = c * q + lookup.get(p, self.config.group.identity)
        return c

    def wreath_at(self, i: int) -> Wreath:
        nc = self.coloring_count
        s_idx, c = divmod(i, nc)
        omega = self.config.omega
        q = self.config.group.order
        digits = []
        for _ in omega:
            c, digit = divmod(c, q)
            digits.append(digit)
        digits.reverse()
        pairs = tuple(
            (p, e)
            for p, e in zip(omega, digits)
            if e != self.config.group.identity
        )
        return Wreath(self.config, self.supports[s_idx], pairs)

    def index_of(self, w: Wreath) -> int:
        if w.config is not self.config:
            raise DomainError("wreath belongs to a different configuration")
        s_idx = self.supports.index(w.support)
        return s_idx * self.coloring_count + self.coloring_index(w)


def build_wreath_graph(
    config: WreathConfig, vertex_cap: int = 200_000
) -> WreathGraphResult:
    """Enumerate every wreath and every edge between them."""
    d = compute_hyperplanes(config.host)
    supports = tuple(enumerate_convex_supports(config.host))
    hsets = [hyperplane_set(d, s) for s in supports]
    q = config.group.order
    omega = config.omega
    nc = q ** len(omega)
    total = len(supports) * nc
    if total > vertex_cap:
        raise CapExceeded(f"{total} wreaths exceeds cap {vertex_cap}")

    move_pairs = []
    mismatches = 0
    for i in range(len(supports)):
        for j in range(i + 1, len(supports)):
            naive, actual = _move_pair(d, supports[i], hsets[i], supports[j], hsets[j])
            if actual:
                move_pairs.append((i, j))
            elif naive:
                mismatches += 1
    if mismatches:
        logger.info(
            "%d support pairs pass the hyperplane-count test but are not "
            "single-hyperplane moves",
            mismatches,
        )

    edges = []
    for i, j in move_pairs:
        base_i, base_j = i * nc, j * nc
        for c in range(nc):
            edges.append((base_i + c, base_j + c))
    for s_idx, supp in enumerate(supports):
        base = s_idx * nc
        for t, p in enumerate(omega):
            if p not in supp:
                continue
            w = q ** (len(omega) - 1 - t)
            for c in range(nc):
                digit = (c // w) % q
                for e2 in range(digit + 1, q):
                    edges.append((base + c, base + c + (e2 - digit) * w))
    graph = Graph(total, edges)
    return WreathGraphResult(
        config=config,
        graph=graph,
        supports=supports,
        decomposition=d,
        move_pairs=tuple(move_pairs),
        naive_mismatch_pairs=mismatches,
    )


def wreath_edge(
    w1: Wreath, w2: Wreath, decomposition: HyperplaneDecomposition | None = None
):
    """Edge kind between two wreaths: 'move', 'recolor' or None."""
    if w1.config is not w2.config:
        raise DomainError("wreaths belong to different configurations")
    cfg = w1.config
    if w1.support == w2.support:
        if w1.coloring == w2.coloring:
            return None
        c1, c2 = dict(w1.coloring), dict(w2.coloring)
        diff = [
            p
            for p in cfg.omega
            if c1.get(p, cfg.group.identity) != c2.get(p, cfg.group.identity)
        ]
        if len(diff) == 1 and diff[0] in w1.support:
            return "recolor"
        return None
    if w1.coloring != w2.coloring:
        return None
    d = decomposition if decomposition is not None else compute_hyperplanes(cfg.host)
    h1 = hyperplane_set(d, w1.support)
    h2 = hyperplane_set(d, w2.support)
    _, actual = _move_pair(d, w1.support, h1, w2.support, h2)
    return "move" if actual else None


def wreath_config_from_json(obj) -> WreathConfig:
    """Parse ``{"host": graph, "omega": [...], "lamp": groupspec}`` where
    the lamp spec is {"cyclic": n} (n >= 1) or {"table": [[...]]}."""
    if not isinstance(obj, dict):
        raise SchemaError("wreath configuration must be a JSON object")
    for key in ("host", "omega", "lamp"):
        if key not in obj:
            raise SchemaError(f"wreath configuration needs a '{key}' key")
    host = graph_from_json(obj["host"])
    raw = obj["omega"]
    if not isinstance(raw, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in raw
    ):
        raise SchemaError("'omega' must be a list of vertex indices")
    if not all(0 <= p < host.n for p in raw):
        raise SchemaError("'omega' entry out of range")
    spec = obj["lamp"]
    if isinstance(spec, dict) and "cyclic" in spec:
        ncyc = spec["cyclic"]
        if not isinstance(ncyc, int) or isinstance(ncyc, bool) or ncyc < 1:
            raise SchemaError("'cyclic' takes a positive integer order")
        group = trivial_group() if ncyc == 1 else FiniteGroup.cyclic(ncyc)
    elif isinstance(spec, dict) and "table" in spec:
        rows = spec["table"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise SchemaError("'table' must be a list of rows")
        try:
            group = FiniteGroup.from_table(rows)
        except ValueError as exc:
            raise SchemaError(str(exc))
    else:
        raise SchemaError(f"unrecognised lamp group specification {spec!r}")
    return WreathConfig.create(host, raw, group)
