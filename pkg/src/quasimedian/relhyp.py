"""Relative hyperbolicity of a graph product, decided from the defining
graph and a finite/infinite label per vertex group.

A subgraph is narrow when it is complete and carries only finite labels
(its subgroup is then finite); otherwise it is vast.  Starting from the
large joins (joins with both factors vast), members are repeatedly
merged along vast intersections and saturated by adding vertices whose
link meets the current member in a vast subgraph.  The product is
relatively hyperbolic exactly when the stable collection, padded with
singletons for the uncovered vertices, differs from the whole graph.

Everything here works on vertex bitmasks; the defining graph is capped
at 16 vertices by default because the join enumeration is exponential.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, SchemaError, SingleVertexError
from .graph_products import FiniteGroup, GraphProductPresentation
from .graphs import Graph, _bit_indices, graph_from_json

DEFAULT_VERTEX_CAP = 16


@dataclass(frozen=True, eq=False)
class LabelledGamma:
    """Defining graph with one finiteness flag per vertex.

    ``finite[v]`` means the group at v is finite (and nontrivial); the
    classification only depends on these flags, never on the groups
    themselves.
    """

    gamma: Graph
    finite: tuple

    def __post_init__(self):
        if len(self.finite) != self.gamma.n:
            raise ValueError(
                f"{self.gamma.n} vertices but {len(self.finite)} labels"
            )


def labelled_from_presentation(pres: GraphProductPresentation) -> LabelledGamma:
    return LabelledGamma(
        pres.gamma, tuple(isinstance(g, FiniteGroup) for g in pres.groups)
    )


def _infinite_mask(lg: LabelledGamma) -> int:
    return sum(1 << v for v, f in enumerate(lg.finite) if not f)


def _vast_mask(lg: LabelledGamma, mask: int) -> bool:
    if mask == 0:
        return False
    if mask & _infinite_mask(lg):
        return True
    for v in _bit_indices(mask):
        if mask & ~(lg.gamma.neighbor_bits(v) | 1 << v):
            return True
    return False


def is_vast(lg: LabelledGamma, subset) -> bool:
    """Whether the subgroup generated by these vertex groups is infinite:
    true unless the subset induces a complete graph with finite labels."""
    mask = 0
    for v in subset:
        if not 0 <= v < lg.gamma.n:
            raise ValueError(f"vertex {v} out of range")
        mask |= 1 << v
    return _vast_mask(lg, mask)


def _large_join_masks(lg: LabelledGamma) -> list:
    """Masks of the large joins: unions A | B over unordered pairs of
    disjoint vast sets with complete bipartite adjacency between them."""
    n = lg.gamma.n
    vast = bytearray(1 << n)
    for mask in range(1, 1 << n):
        vast[mask] = _vast_mask(lg, mask)
    out = set()
    for amask in range(1, 1 << n):
        if not vast[amask]:
            continue
        common = (1 << n) - 1
        for v in _bit_indices(amask):
            common &= lg.gamma.neighbor_bits(v)
        bmask = common
        while bmask:
            if bmask > amask and vast[bmask]:
                out.add(amask | bmask)
            bmask = (bmask - 1) & common
    return sorted(out)


def large_joins(lg: LabelledGamma, cap: int = DEFAULT_VERTEX_CAP) -> list:
    """All large joins as vertex sets, deduplicated and sorted."""
    if lg.gamma.n > cap:
        raise CapExceeded(
            f"defining graph has {lg.gamma.n} vertices, cap is {cap}"
        )
    return [frozenset(_bit_indices(m)) for m in _large_join_masks(lg)]


def _cp(lg: LabelledGamma, mask: int) -> int:
    """Saturate: add every vertex whose link meets the set vastly."""
    add = 0
    for v in range(lg.gamma.n):
        if mask >> v & 1:
            continue
        if _vast_mask(lg, lg.gamma.neighbor_bits(v) & mask):
            add |= 1 << v
    return mask | add


def _step(lg: LabelledGamma, members: tuple) -> tuple:
    """One round: merge members with vast pairwise intersections, then
    saturate each merged union."""
    k = len(members)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        for j in range(i + 1, k):
            if _vast_mask(lg, members[i] & members[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    unions: dict = {}
    for i in range(k):
        r = find(i)
        unions[r] = unions.get(r, 0) | members[i]
    return tuple(sorted({_cp(lg, m) for m in unions.values()}))


@dataclass(frozen=True)
class PeripheralCollection:
    """Stable collection of peripheral subgraphs.

    ``members`` are vertex sets (stable members plus singletons for the
    vertices no member covers); ``iterations`` counts the rounds until
    the collection stopped changing.
    """

    members: tuple
    is_whole: bool
    iterations: int

    def to_json(self) -> dict:
        return {
            "members": [sorted(m) for m in self.members],
            "is_whole": self.is_whole,
            "iterations": self.iterations,
        }


def compute_peripherals(
    lg: LabelledGamma,
    maximal_joins: bool = False,
    cap: int = DEFAULT_VERTEX_CAP,
) -> PeripheralCollection:
    """Run the merge-and-saturate iteration to its fixed point.

    With ``maximal_joins`` the iteration is seeded only with the
    inclusion-maximal large joins; the fixed point is the same and the
    flag exists to cross-validate that on real inputs.
    """
    n = lg.gamma.n
    if n > cap:
        raise CapExceeded(f"defining graph has {n} vertices, cap is {cap}")
    seeds = _large_join_masks(lg)
    if maximal_joins:
        seeds = [
            m
            for m in seeds
            if not any(m != m2 and m & m2 == m for m2 in seeds)
        ]
    current = tuple(sorted(set(seeds)))
    iterations = 0
    while True:
        nxt = _step(lg, current)
        if nxt == current:
            break
        current = nxt
        iterations += 1
    covered = 0
    for m in current:
        covered |= m
    members = list(current)
    for v in range(n):
        if not covered >> v & 1:
            members.append(1 << v)
    members.sort(key=lambda m: tuple(_bit_indices(m)))
    full = (1 << n) - 1
    return PeripheralCollection(
        members=tuple(frozenset(_bit_indices(m)) for m in members),
        is_whole=len(members) == 1 and members[0] == full,
        iterations=iterations,
    )


@dataclass(frozen=True)
class RelHypVerdict:
    relatively_hyperbolic: bool
    peripherals: PeripheralCollection
    degenerate: bool

    def to_json(self) -> dict:
        return {
            "relatively_hyperbolic": self.relatively_hyperbolic,
            "peripherals": self.peripherals.to_json(),
            "degenerate": self.degenerate,
        }


def classify(
    lg: LabelledGamma,
    maximal_joins: bool = False,
    cap: int = DEFAULT_VERTEX_CAP,
) -> RelHypVerdict:
    """Relative hyperbolicity verdict for the graph product.

    Undefined on fewer than two vertices.  ``degenerate`` flags the case
    of a narrow defining graph, where the whole product is finite and
    the verdict carries no geometric content.
    """
    n = lg.gamma.n
    if n < 2:
        raise SingleVertexError(
            "classification needs a defining graph with at least two vertices"
        )
    coll = compute_peripherals(lg, maximal_joins=maximal_joins, cap=cap)
    full = frozenset(range(n))
    return RelHypVerdict(
        relatively_hyperbolic=not coll.is_whole,
        peripherals=coll,
        degenerate=not is_vast(lg, full),
    )


def labelled_gamma_from_json(obj) -> LabelledGamma:
    """Parse ``{"gamma": graph, "finiteness": ["finite"|"infinite", ...]}``."""
    if not isinstance(obj, dict):
        raise SchemaError("labelled graph must be a JSON object")
    if "gamma" not in obj or "finiteness" not in obj:
        raise SchemaError("labelled graph needs 'gamma' and 'finiteness' keys")
    gamma = graph_from_json(obj["gamma"])
    raw = obj["finiteness"]
    if not isinstance(raw, list):
        raise SchemaError("'finiteness' must be a list")
    if len(raw) != gamma.n:
        raise SchemaError(f"{gamma.n} vertices but {len(raw)} finiteness labels")
    flags = []
    for x in raw:
        if x == "finite":
            flags.append(True)
        elif x == "infinite":
            flags.append(False)
        else:
            raise SchemaError(f"finiteness labels are 'finite' or 'infinite', got {x!r}")
    return LabelledGamma(gamma, tuple(flags))
