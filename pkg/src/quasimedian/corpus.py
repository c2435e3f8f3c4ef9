"""Corpus runner: generate graphs from a manifest and run named
structural checks against each one.

A manifest is ``{"entries": [{"name", "generator", "checks"}, ...]}``.
Generators either construct graphs (prism, random, cycle, path,
complete, hypercube) or load them (inline object, file path).  Checks
are registry names, optionally parameterised like
``hyperplane_count:3``.  Results come back as flat rows ready for CSV.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path

from . import cubulation as cb
from . import generators as gen
from . import hyperplanes as hp
from . import recognition as rec
from .errors import SchemaError
from .graphs import Graph, graph_from_json, is_isomorphic


class _Ctx:
    """Per-entry lazy cache so checks share the expensive structures."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self._decomposition = None
        self._wallspace = None
        self._cubulation = None

    @property
    def decomposition(self):
        if self._decomposition is None:
            self._decomposition = hp.compute_hyperplanes(self.graph)
        return self._decomposition

    @property
    def wallspace(self):
        if self._wallspace is None:
            self._wallspace = cb.walls_from_graph(self.graph, self.decomposition)
        return self._wallspace

    @property
    def cubulation(self):
        if self._cubulation is None:
            self._cubulation = cb.cubulate(self.wallspace)
        return self._cubulation


def _check_quasi_median(ctx, arg):
    v = rec.is_quasi_median(ctx.graph)
    return v.positive, v.status.value


def _check_not_quasi_median(ctx, arg):
    v = rec.is_quasi_median(ctx.graph)
    if v.positive:
        return False, v.status.value
    if not rec.replay_witness(ctx.graph, v):
        return False, f"{v.status.value}: witness failed replay"
    return True, v.status.value


def _check_median(ctx, arg):
    v = rec.is_median(ctx.graph)
    return v.positive, v.status.value


def _check_not_median(ctx, arg):
    v = rec.is_median(ctx.graph)
    if v.positive:
        return False, v.status.value
    if not rec.replay_witness(ctx.graph, v):
        return False, f"{v.status.value}: witness failed replay"
    return True, v.status.value


def _check_distance_theorem(ctx, arg):
    counts = hp.separation_counts(ctx.decomposition)
    dist = ctx.graph.distance_matrix()
    if (counts == dist).all():
        return True, f"{ctx.decomposition.k} classes"
    bad = int((counts != dist).sum() // 2)
    return False, f"{bad} vertex pairs disagree"


def _check_sectors_gated(ctx, arg):
    d = ctx.decomposition
    dist = ctx.graph.distance_matrix()
    for j in range(d.k):
        for sector in d.sectors[j]:
            if not hp.is_gated(ctx.graph, sector, dist):
                return False, f"class {j} has a non-gated sector"
    return True, f"{d.k} classes"


def _check_carrier_product(ctx, arg):
    d = ctx.decomposition
    for j in range(d.k):
        report = hp.verify_carrier_decomposition(d, j)
        if not report.ok:
            return False, f"class {j}: {report.reason}"
    return True, f"{d.k} carriers"


def _check_geodesics(ctx, arg):
    """Sampled agreement between the crossing criterion and length
    versus distance, on shortest paths and on detouring walks."""
    g = ctx.graph
    d = ctx.decomposition
    rng = gen.SplitMix64(0xC0FFEE ^ g.n)
    dist = g.distance_matrix()
    for _ in range(40):
        a = rng.below(g.n)
        b = rng.below(g.n)
        path = _bfs_path(g, a, b)
        flag, _ = hp.is_geodesic(d, path)
        if flag != (len(path) - 1 == int(dist[a][b])):
            return False, f"geodesic mismatch on {a}..{b}"
        walk = [a]
        for _ in range(6):
            walk.append(rng.choice(g.neighbors(walk[-1])))
        flag, _ = hp.is_geodesic(d, walk)
        if flag != (len(walk) - 1 == int(dist[walk[0]][walk[-1]])):
            return False, f"walk mismatch from {a}"
    return True, "40 paths and 40 walks"


def _bfs_path(g: Graph, a: int, b: int) -> list:
    prev = {a: None}
    queue = [a]
    for u in queue:
        if u == b:
            break
        for v in g.neighbors(u):
            if v not in prev:
                prev[v] = u
                queue.append(v)
    path = [b]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def _check_hyperplane_count(ctx, arg):
    want = int(arg)
    got = ctx.decomposition.k
    return got == want, f"expected {want}, got {got}"


def _check_cubulation_median(ctx, arg):
    v = rec.is_median(ctx.cubulation.graph)
    return v.positive, f"{ctx.cubulation.graph.n} cube vertices"


def _check_cubulation_oracle(ctx, arg):
    ws = ctx.wallspace
    if ws.k > cb.ORACLE_WALL_LIMIT:
        return False, f"{ws.k} walls is past the oracle limit"
    expect = set(cb.all_consistent_orientations(ws))
    got = set(ctx.cubulation.orientations)
    if expect == got:
        return True, f"{len(expect)} orientations"
    return False, f"flip search found {len(got)} of {len(expect)}"


def _check_self_cubulation(ctx, arg):
    cub = ctx.cubulation
    if is_isomorphic(ctx.graph, cub.graph):
        return True, f"{ctx.graph.n} vertices"
    return False, f"host {ctx.graph.n} vs cube {cub.graph.n} vertices"


def _check_quasi_isometry(ctx, arg):
    report = cb.quasi_isometry_report(ctx.cubulation)
    bound = int(arg) if arg else 0
    err = report["max_additive_error"]
    return err <= bound, f"additive error {err}"


CHECKS = {
    "quasi_median": _check_quasi_median,
    "not_quasi_median": _check_not_quasi_median,
    "median": _check_median,
    "not_median": _check_not_median,
    "distance_theorem": _check_distance_theorem,
    "sectors_gated": _check_sectors_gated,
    "carrier_product": _check_carrier_product,
    "geodesics": _check_geodesics,
    "hyperplane_count": _check_hyperplane_count,
    "cubulation_median": _check_cubulation_median,
    "cubulation_oracle": _check_cubulation_oracle,
    "self_cubulation": _check_self_cubulation,
    "quasi_isometry": _check_quasi_isometry,
}


@dataclass(frozen=True)
class CorpusRow:
    entry: str
    check: str
    passed: bool
    detail: str
    seconds: float


def _build_graph(spec, base_dir: Path) -> Graph:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SchemaError("generator must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "prism":
        return gen.prism(_int_list(spec, "sizes"))
    if kind == "random":
        return gen.random_quasi_median(
            _int_field(spec, "seed"),
            _int_field(spec, "steps"),
            _int_field(spec, "max_prism", default=4),
        )
    if kind == "cycle":
        return gen.cycle_graph(_int_field(spec, "n"))
    if kind == "path":
        return gen.path_graph(_int_field(spec, "n"))
    if kind == "complete":
        return gen.complete_graph(_int_field(spec, "n"))
    if kind == "hypercube":
        return gen.hypercube(_int_field(spec, "n"))
    if kind == "graph":
        if "graph" not in spec:
            raise SchemaError("inline generator needs a 'graph' object")
        return graph_from_json(spec["graph"])
    if kind == "file":
        rel = spec.get("path")
        if not isinstance(rel, str):
            raise SchemaError("file generator needs a string 'path'")
        target = base_dir / rel
        try:
            with open(target) as fh:
                return graph_from_json(json.load(fh))
        except OSError as exc:
            raise SchemaError(f"cannot read {target}: {exc}")
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{target} is not valid JSON: {exc}")
    raise SchemaError(f"unknown generator kind {kind!r}")


def _int_field(spec, key, default=None):
    if key not in spec:
        if default is not None:
            return default
        raise SchemaError(f"generator needs an integer '{key}'")
    val = spec[key]
    if not isinstance(val, int) or isinstance(val, bool):
        raise SchemaError(f"'{key}' must be an integer")
    return val


def _int_list(spec, key):
    val = spec.get(key)
    if not isinstance(val, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in val
    ):
        raise SchemaError(f"'{key}' must be a list of integers")
    return val


def parse_manifest(obj) -> list:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise SchemaError("manifest must be an object with an 'entries' list")
    entries = obj["entries"]
    if not isinstance(entries, list):
        raise SchemaError("'entries' must be a list")
    parsed = []
    for entry in entries:
        if not isinstance(entry, dict):
            raise SchemaError("each entry must be an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError("each entry needs a nonempty string 'name'")
        checks = entry.get("checks")
        if not isinstance(checks, list) or not all(
            isinstance(c, str) for c in checks
        ):
            raise SchemaError(f"entry {name!r} needs a list of check names")
        for c in checks:
            base = c.split(":", 1)[0]
            if base not in CHECKS:
                raise SchemaError(f"entry {name!r} uses unknown check {base!r}")
        if "generator" not in entry:
            raise SchemaError(f"entry {name!r} has no generator")
        parsed.append((name, entry["generator"], checks))
    return parsed


def run_corpus(manifest_obj, base_dir) -> tuple:
    """Run every check of every entry; returns (rows, named graphs)."""
    entries = parse_manifest(manifest_obj)
    base = Path(base_dir)
    rows = []
    graphs = []
    for name, genspec, checks in entries:
        graph = _build_graph(genspec, base)
        graphs.append((name, graph))
        ctx = _Ctx(graph)
        for check in checks:
            base_name, _, arg = check.partition(":")
            fn = CHECKS[base_name]
            start = time.perf_counter()
            try:
                passed, detail = fn(ctx, arg or None)
            except Exception as exc:  # a crashing check is a failing check
                passed, detail = False, f"error: {exc}"
            rows.append(
                CorpusRow(
                    entry=name,
                    check=check,
                    passed=passed,
                    detail=detail,
                    seconds=round(time.perf_counter() - start, 4),
                )
            )
    return rows, graphs


def write_csv(rows, stream):
    # No timing column: identical inputs must give byte-identical output.
    writer = csv.writer(stream)
    writer.writerow(["entry", "check", "passed", "detail"])
    for row in rows:
        writer.writerow(
            [row.entry, row.check, "pass" if row.passed else "fail", row.detail]
        )


def write_report(rows, graphs, report_dir):
    """Write report.csv plus one figure per graph and a summary chart."""
    from . import plotting

    out = Path(report_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "report.csv", "w", newline="") as fh:
        write_csv(rows, fh)
    figdir = out / "figures"
    figdir.mkdir(exist_ok=True)
    for name, graph in graphs:
        safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
        plotting.draw_graph(graph, figdir / f"{safe}.png", title=name)
    plotting.draw_summary(rows, figdir / "summary.png")
