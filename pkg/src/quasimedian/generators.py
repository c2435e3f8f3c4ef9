"""Graph constructors: complete graphs, paths, cycles, prisms (products
of complete graphs), gated amalgams, and a seeded random generator that
builds quasi-median graphs by repeatedly gluing prisms along verified
gated subgraphs.

All randomness flows through SplitMix64 so identical seeds give
byte-identical graphs on every platform.
"""

from __future__ import annotations

from itertools import combinations

from .errors import AmalgamError, DomainError
from .graphs import Graph, cartesian_product
from .hyperplanes import is_gated


class SplitMix64:
    """Deterministic 64-bit PRNG (splitmix64 update function)."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self._state = seed & self.MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self.MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform draw from 0..n-1 without modulo bias."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq):
        return seq[self.below(len(seq))]


def complete_graph(k: int) -> Graph:
    return Graph(k, list(combinations(range(k), 2)))


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise DomainError("cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def prism(sizes) -> Graph:
    """Cartesian product of complete graphs K_{s1} x ... x K_{sk}.

    >>> prism([2, 2, 2]).edge_count()
    12
    """
    sizes = list(sizes)
    if not sizes:
        raise DomainError("prism needs at least one factor")
    if any(not isinstance(s, int) or s < 1 for s in sizes):
        raise DomainError(f"prism sizes must be positive integers, got {sizes}")
    g = complete_graph(sizes[0])
    for s in sizes[1:]:
        g = cartesian_product(g, complete_graph(s))
    return g


def hypercube(k: int) -> Graph:
    return prism([2] * k)


def gated_amalgam(g1: Graph, g2: Graph, correspondence) -> Graph:
    """Glue g1 and g2 along matched vertex sets that are gated in both.

    ``correspondence`` is a list of (vertex-of-g1, vertex-of-g2) pairs; it
    must match an induced subgraph of g1 isomorphically onto one of g2,
    and each side must be gated in its graph.  Vertices of g1 keep their
    indices; unmatched g2 vertices follow in ascending order.
    """
    pairs = [(int(a), int(b)) for a, b in correspondence]
    if not pairs:
        raise AmalgamError("correspondence must be nonempty")
    side1 = [a for a, _ in pairs]
    side2 = [b for _, b in pairs]
    if len(set(side1)) != len(pairs) or len(set(side2)) != len(pairs):
        raise AmalgamError("correspondence has repeated vertices")
    if not all(0 <= a < g1.n for a in side1) or not all(
        0 <= b < g2.n for b in side2
    ):
        raise AmalgamError("correspondence vertex out of range")
    for (a, b), (a2, b2) in combinations(pairs, 2):
        if g1.adjacent(a, a2) != g2.adjacent(b, b2):
            raise AmalgamError(
                f"correspondence is not an isomorphism at {(a, a2)} / {(b, b2)}"
            )
    if not is_gated(g1, side1):
        raise AmalgamError("first side of the correspondence is not gated")
    if not is_gated(g2, side2):
        raise AmalgamError("second side of the correspondence is not gated")

    remap = {b: a for a, b in pairs}
    nxt = g1.n
    for b in range(g2.n):
        if b not in remap:
            remap[b] = nxt
            nxt += 1
    edges = set(g1.edges())
    for u, v in g2.edges():
        a, b = remap[u], remap[v]
        edges.add((min(a, b), max(a, b)))
    return Graph(nxt, sorted(edges))


def _random_sizes(rng: SplitMix64, max_prism: int) -> list[int]:
    k = 1 + rng.below(3)
    sizes = [1 + rng.below(max_prism) for _ in range(k)]
    if all(s == 1 for s in sizes):
        sizes[rng.below(k)] = min(2, max_prism) if max_prism >= 2 else 1
    return sizes


def _gated_edge(rng: SplitMix64, g: Graph, tries: int = 8):
    """A uniformly sampled edge verified gated in g, or None."""
    edges = g.edges()
    if not edges:
        return None
    for _ in range(tries):
        e = rng.choice(edges)
        if is_gated(g, e):
            return e
    return None


def random_quasi_median(seed: int, steps: int, max_prism: int = 4) -> Graph:
    """Random gated amalgam of prisms; deterministic in ``seed``.

    Starts from a random prism and performs ``steps`` gluings, each
    attaching a fresh random prism along either a single vertex or an
    edge.  Candidate gluing sets are checked with ``is_gated`` before
    use, so every output is a genuine gated amalgam of prisms.
    """
    if steps < 1:
        raise DomainError("steps must be at least 1")
    if max_prism < 1:
        raise DomainError("max_prism must be at least 1")
    rng = SplitMix64(seed)
    current = prism(_random_sizes(rng, max_prism))
    for _ in range(steps):
        piece = prism(_random_sizes(rng, max_prism))
        corr = None
        if rng.below(2) == 1:
            e1 = _gated_edge(rng, current)
            e2 = _gated_edge(rng, piece)
            if e1 is not None and e2 is not None:
                corr = [(e1[0], e2[0]), (e1[1], e2[1])]
        if corr is None:
            corr = [(rng.below(current.n), rng.below(piece.n))]
        current = gated_amalgam(current, piece, corr)
    return current
