"""Graph products of groups over a finite defining graph.

A presentation assigns a group to each vertex of a defining graph gamma;
adjacent vertex groups commute.  Elements are words of syllables
(vertex, element).  ``reduce_word`` computes a canonical normal form in
two phases: first merge or cancel syllables of the same vertex that can
be brought together across commuting blocks, then emit the unique
ordering that always moves the smallest available vertex to the front.
Two words represent the same group element exactly when their normal
forms coincide.

Finite vertex groups are multiplication tables; infinite ones are kept
symbolic (modelled on the integers) and support word arithmetic but not
Cayley enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from math import prod

from .errors import CapExceeded, DomainError, InfiniteGroupError, SchemaError
from .graphs import Graph, graph_from_json


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a multiplication table over elements 0..n-1."""

    table: tuple
    identity: int
    inverses: tuple

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, e: int) -> int:
        return self.inverses[e]

    def is_identity(self, e: int) -> bool:
        return e == self.identity

    def contains(self, e) -> bool:
        return isinstance(e, int) and not isinstance(e, bool) and 0 <= e < self.order

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 2:
            raise ValueError("cyclic group needs order at least 2")
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return cls(table, 0, tuple((-i) % n for i in range(n)))

    @classmethod
    def from_table(cls, rows) -> "FiniteGroup":
        """Validate a multiplication table: closure, associativity,
        identity and inverses."""
        n = len(rows)
        if n < 2:
            raise ValueError("vertex group needs at least two elements")
        table = []
        for row in rows:
            if len(row) != n:
                raise ValueError("multiplication table must be square")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise ValueError(f"table entry {x!r} out of range")
            table.append(tuple(row))
        table = tuple(table)
        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("multiplication table has no identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValueError(
                            f"multiplication table not associative at {(a, b, c)}"
                        )
        inverses = []
        for a in range(n):
            inv = next(
                (b for b in range(n) if table[a][b] == identity == table[b][a]),
                None,
            )
            if inv is None:
                raise ValueError(f"element {a} has no inverse")
            inverses.append(inv)
        return cls(table, identity, tuple(inverses))


class SymbolicInfinite:
    """Stand-in for an infinite vertex group, modelled on the integers:
    elements are arbitrary ints, 0 is the identity."""

    identity = 0
    order = None

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inverse(self, e: int) -> int:
        return -e

    def is_identity(self, e: int) -> bool:
        return e == 0

    def contains(self, e) -> bool:
        return isinstance(e, int) and not isinstance(e, bool)

    def __repr__(self):
        return "InfiniteGroup"


INFINITE = SymbolicInfinite()


@dataclass(frozen=True, eq=False)
class GraphProductPresentation:
    """Defining graph plus one group per vertex."""

    gamma: Graph
    groups: tuple

    def __post_init__(self):
        if len(self.groups) != self.gamma.n:
            raise ValueError(
                f"{self.gamma.n} vertices but {len(self.groups)} groups"
            )

    @property
    def all_finite(self) -> bool:
        return all(isinstance(g, FiniteGroup) for g in self.groups)

    def vertex_name(self, v: int) -> str:
        if self.gamma.labels and v in self.gamma.labels:
            return self.gamma.labels[v]
        return f"v{v}"


def _check_word(pres: GraphProductPresentation, word) -> list:
    syls = []
    for s in word:
        v, e = s
        if not 0 <= v < pres.gamma.n:
            raise ValueError(f"syllable vertex {v} out of range")
        if not pres.groups[v].contains(e):
            raise ValueError(f"element {e!r} not in the group at vertex {v}")
        syls.append((v, e))
    return syls


def reduce_word(pres: GraphProductPresentation, word) -> tuple:
    """Canonical normal form of a word.

    >>> p = GraphProductPresentation(Graph(2), (FiniteGroup.cyclic(2),) * 2)
    >>> reduce_word(p, [(0, 1), (1, 1), (0, 1)])
    ((0, 1), (1, 1), (0, 1))
    """
    syls = _check_word(pres, word)
    gamma = pres.gamma
    changed = True
    while changed:
        changed = False
        kept = [s for s in syls if not pres.groups[s[0]].is_identity(s[1])]
        if len(kept) != len(syls):
            syls = kept
            changed = True
            continue
        merged = False
        for i in range(len(syls)):
            vi, ei = syls[i]
            for j in range(i + 1, len(syls)):
                vj, ej = syls[j]
                if vj == vi:
                    del syls[j]
                    syls[i] = (vi, pres.groups[vi].mul(ei, ej))
                    changed = merged = True
                    break
                if not gamma.adjacent(vi, vj):
                    break
            if merged:
                break
    out = []
    while syls:
        seen = 0
        best_pos = -1
        best_v = -1
        for pos, (v, _) in enumerate(syls):
            if seen & ~gamma.neighbor_bits(v) == 0 and (best_pos < 0 or v < best_v):
                best_pos, best_v = pos, v
            seen |= 1 << v
        out.append(syls.pop(best_pos))
    return tuple(out)


def word_equal(pres, w1, w2) -> bool:
    return reduce_word(pres, w1) == reduce_word(pres, w2)


def multiply_words(pres, w1, w2) -> tuple:
    return reduce_word(pres, tuple(w1) + tuple(w2))


def inverse_word(pres, word) -> tuple:
    syls = _check_word(pres, word)
    return reduce_word(
        pres, [(v, pres.groups[v].inverse(e)) for v, e in reversed(syls)]
    )


def syllable_length(pres, word) -> int:
    return len(reduce_word(pres, word))


def format_word(pres, word) -> str:
    """Readable form: ``name^element`` per syllable, identity as 'e'."""
    if not word:
        return "e"
    return " ".join(f"{pres.vertex_name(v)}^{e}" for v, e in word)


# -- Cayley constructions ----------------------------------------------


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    """Cayley graph fragment with its word table.

    ``words[i]`` is the normal form of vertex i and ``index`` inverts
    that table.  Edges connect words differing by one syllable
    generator on the right.
    """

    graph: Graph
    words: tuple
    index: dict


@dataclass(frozen=True, eq=False)
class CayleyBall(CayleyGraph):
    """Ball around the identity.

    ``interior`` holds the vertices whose full generator star is known
    to lie inside the ball; when ``complete`` the ball exhausts a finite
    group and everything is interior.
    """

    interior: frozenset
    complete: bool


def _generators(pres) -> list:
    gens = []
    for v in range(pres.gamma.n):
        grp = pres.groups[v]
        gens.extend((v, e) for e in range(grp.order) if e != grp.identity)
    return gens


def _require_finite(pres):
    for v, grp in enumerate(pres.groups):
        if not isinstance(grp, FiniteGroup):
            raise InfiniteGroupError(
                f"vertex {v} carries an infinite group; Cayley enumeration "
                "needs finite vertex groups"
            )


def full_cayley_graph(pres, cap: int = 100_000) -> CayleyGraph:
    """Cayley graph of the whole group; needs a complete defining graph
    and finite vertex groups so the product itself is finite."""
    _require_finite(pres)
    n = pres.gamma.n
    for u in range(n):
        for v in range(u + 1, n):
            if not pres.gamma.adjacent(u, v):
                raise DomainError(
                    "full Cayley graph needs a complete defining graph; "
                    f"vertices {u} and {v} are not adjacent"
                )
    total = prod(g.order for g in pres.groups)
    if total > cap:
        raise CapExceeded(f"group order {total} exceeds cap {cap}")
    words, index, edges = _cayley_bfs(pres, radius=None)
    if len(words) != total:
        raise AssertionError("Cayley enumeration missed group elements")
    labels = {i: format_word(pres, w) for i, w in enumerate(words)}
    return CayleyGraph(Graph(total, sorted(edges), labels), tuple(words), index)


def cayley_ball(pres, radius: int, cap: int = 100_000) -> CayleyBall:
    """Ball of the given syllable-length radius around the identity.

    The interior marks vertices whose neighbourhoods in the full Cayley
    graph are certainly present: everything when the ball turns out to
    exhaust a finite group, otherwise the vertices at depth at most
    radius - 2.
    """
    _require_finite(pres)
    if radius < 1:
        raise DomainError("radius must be at least 1")
    words, index, edges, complete = _cayley_bfs(pres, radius=radius, cap=cap)
    labels = {i: format_word(pres, w) for i, w in enumerate(words)}
    graph = Graph(len(words), sorted(edges), labels)
    if complete:
        interior = frozenset(range(len(words)))
    else:
        interior = frozenset(
            i for i, w in enumerate(words) if len(w) <= radius - 2
        )
    return CayleyBall(graph, tuple(words), index, interior, complete)


def _cayley_bfs(pres, radius, cap: int | None = None):
    """Breadth-first closure of the identity under right multiplication
    by syllable generators, stopping at normal forms longer than
    ``radius`` when one is given."""
    gens = _generators(pres)
    words = [()]
    index: dict = {(): 0}
    edges = set()
    complete = True
    queue = deque([()])
    while queue:
        w = queue.popleft()
        i = index[w]
        for s in gens:
            w2 = reduce_word(pres, w + (s,))
            if radius is not None and len(w2) > radius:
                complete = False
                continue
            j = index.get(w2)
            if j is None:
                j = len(words)
                index[w2] = j
                words.append(w2)
                if cap is not None and len(words) > cap:
                    raise CapExceeded(f"ball size exceeds cap {cap}")
                queue.append(w2)
            if i != j:
                edges.add((min(i, j), max(i, j)))
    if radius is None:
        return words, index, edges
    return words, index, edges, complete


def vertex_group_cosets(pres, cay: CayleyGraph) -> set:
    """Vertex sets of left cosets of vertex groups, for cross-checking
    against the maximal cliques of a Cayley graph."""
    out = set()
    for w in cay.words:
        for v in range(pres.gamma.n):
            grp = pres.groups[v]
            members = []
            for e in range(grp.order):
                idx = cay.index.get(reduce_word(pres, w + ((v, e),)))
                if idx is None:
                    members = None
                    break
                members.append(idx)
            if members is not None:
                out.add(frozenset(members))
    return out


# -- serialisation -----------------------------------------------------


def presentation_from_json(obj) -> GraphProductPresentation:
    """Parse ``{"gamma": graph, "groups": [spec, ...]}`` where each group
    spec is {"cyclic": n}, {"table": [[...]]} or the string "infinite"."""
    if not isinstance(obj, dict):
        raise SchemaError("presentation must be a JSON object")
    if "gamma" not in obj or "groups" not in obj:
        raise SchemaError("presentation needs 'gamma' and 'groups' keys")
    gamma = graph_from_json(obj["gamma"])
    raw = obj["groups"]
    if not isinstance(raw, list):
        raise SchemaError("'groups' must be a list")
    if len(raw) != gamma.n:
        raise SchemaError(
            f"{gamma.n} vertices but {len(raw)} group specifications"
        )
    groups = []
    for spec in raw:
        if spec == "infinite":
            groups.append(INFINITE)
        elif isinstance(spec, dict) and "cyclic" in spec:
            n = spec["cyclic"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise SchemaError("'cyclic' takes an integer order")
            try:
                groups.append(FiniteGroup.cyclic(n))
            except ValueError as exc:
                raise SchemaError(str(exc))
        elif isinstance(spec, dict) and "table" in spec:
            rows = spec["table"]
            if not isinstance(rows, list) or not all(
                isinstance(r, list) for r in rows
            ):
                raise SchemaError("'table' must be a list of rows")
            try:
                groups.append(FiniteGroup.from_table(rows))
            except ValueError as exc:
                raise SchemaError(str(exc))
        else:
            raise SchemaError(f"unrecognised group specification {spec!r}")
    return GraphProductPresentation(gamma, tuple(groups))


def word_from_json(pres, obj) -> tuple:
    """Parse a word given as a list of [vertex, element] pairs."""
    if not isinstance(obj, list):
        raise SchemaError("word must be a list of [vertex, element] pairs")
    word = []
    for s in obj:
        if (
            not isinstance(s, (list, tuple))
            or len(s) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in s)
        ):
            raise SchemaError(f"bad syllable {s!r}")
        word.append((s[0], s[1]))
    try:
        _check_word(pres, word)
    except ValueError as exc:
        raise SchemaError(str(exc))
    return tuple(word)


def word_to_json(word) -> list:
    return [list(s) for s in word]
