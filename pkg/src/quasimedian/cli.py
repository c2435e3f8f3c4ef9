"""Command line interface.

Exit codes: 0 for success including negative verdicts, 1 for domain
errors (precondition or cap violations), 2 for malformed input.  All
JSON output is printed with sorted keys so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus as corpus_mod
from . import cubulation as cb
from . import generators as gen
from . import graph_products as gp
from . import hyperplanes as hp
from . import recognition as rec
from . import relhyp as rh
from . import wreaths as wr
from .errors import DomainError, SchemaError
from .graphs import graph_from_json, graph_to_json, to_dot


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}")


def _load_graph(path):
    return graph_from_json(_load_json(path))


_PRETTY = False


def _flat(value):
    if isinstance(value, dict):
        return not value
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return True


def _render_pretty(payload, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        width = max((len(str(k)) for k in payload), default=0)
        for key in sorted(payload, key=str):
            value = payload[key]
            if _flat(value):
                lines.append(f"{pad}{str(key).ljust(width)}  {json.dumps(value, sort_keys=True)}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_pretty(value, indent + 1))
    elif isinstance(payload, list):
        for value in payload:
            if _flat(value):
                lines.append(f"{pad}- {json.dumps(value, sort_keys=True)}")
            else:
                lines.append(f"{pad}-")
                lines.extend(_render_pretty(value, indent + 1))
    else:
        lines.append(f"{pad}{json.dumps(payload, sort_keys=True)}")
    return lines


def _emit(payload):
    if _PRETTY:
        print("\n".join(_render_pretty(payload)))
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- handlers ----------------------------------------------------------


def _cmd_check(args):
    g = _load_graph(args.graph)
    _emit(rec.is_quasi_median(g).to_json())
    return 0


def _cmd_median(args):
    g = _load_graph(args.graph)
    _emit(rec.is_median(g).to_json())
    return 0


def _cmd_hyperplanes(args):
    g = _load_graph(args.graph)
    d = hp.compute_hyperplanes(g)
    crossing = hp.crossing_graph(d)
    payload = {
        "count": d.k,
        "classes": [[list(e) for e in grp] for grp in d.classes],
        "sectors": [[sorted(s) for s in secs] for secs in d.sectors],
        "fibers": [[sorted(f) for f in fibs] for fibs in d.fibers],
        "carriers": [sorted(c) for c in d.carriers],
        "crossing_graph": graph_to_json(crossing),
    }
    if args.carriers:
        reports = []
        for j in range(d.k):
            r = hp.verify_carrier_decomposition(d, j)
            reports.append(
                {
                    "ok": r.ok,
                    "fiber": list(r.fiber),
                    "clique": list(r.clique),
                    "reason": r.reason,
                }
            )
        payload["carrier_reports"] = reports
    _emit(payload)
    if args.crossing_dot:
        _write_text(args.crossing_dot, to_dot(crossing, "crossing"))
    return 0


def _cmd_gen(args):
    if args.family == "prism":
        sizes = [int(s) for s in args.sizes.split(",") if s]
        g = gen.prism(sizes)
    else:
        g = gen.random_quasi_median(args.seed, args.steps, args.max_prism)
    payload = graph_to_json(g)
    if args.out:
        _write_json(args.out, payload)
    else:
        _emit(payload)
    if args.dot:
        _write_text(args.dot, to_dot(g))
    return 0


def _cmd_gp_reduce(args):
    pres = gp.presentation_from_json(_load_json(args.presentation))
    try:
        raw = json.loads(args.word)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"word is not valid JSON: {exc}")
    word = gp.word_from_json(pres, raw)
    reduced = gp.reduce_word(pres, word)
    _emit(
        {
            "word": gp.word_to_json(reduced),
            "length": len(reduced),
            "display": gp.format_word(pres, reduced),
        }
    )
    return 0


def _cmd_gp_cayley(args):
    pres = gp.presentation_from_json(_load_json(args.presentation))
    if args.radius is None:
        cay = gp.full_cayley_graph(pres, cap=args.cap)
        payload = {
            "graph": graph_to_json(cay.graph),
            "complete": True,
            "interior": sorted(range(cay.graph.n)),
        }
    else:
        ball = gp.cayley_ball(pres, args.radius, cap=args.cap)
        payload = {
            "graph": graph_to_json(ball.graph),
            "complete": ball.complete,
            "interior": sorted(ball.interior),
        }
    if args.out:
        _write_json(args.out, payload)
    else:
        _emit(payload)
    return 0


def _cmd_relhyp(args):
    obj = _load_json(args.input)
    if isinstance(obj, dict) and "groups" in obj:
        lg = rh.labelled_from_presentation(gp.presentation_from_json(obj))
    else:
        lg = rh.labelled_gamma_from_json(obj)
    verdict = rh.classify(lg, maximal_joins=args.maximal_joins, cap=args.cap)
    _emit(verdict.to_json())
    return 0


def _cmd_cubulate(args):
    g = _load_graph(args.graph)
    ws = cb.walls_from_graph(g)
    cub = cb.cubulate(ws, cap=args.cap)
    payload = {
        "walls": [
            {
                "sector_side": sorted(x for x in range(g.n) if m0 >> x & 1),
                "complement_side": sorted(x for x in range(g.n) if m1 >> x & 1),
            }
            for m0, m1 in ws.sides
        ],
        "graph": graph_to_json(cub.graph),
        "orientations": [cb.orientation_to_tuple(ws, o) for o in cub.orientations],
        "vertex_map": list(cub.vertex_map),
        "report": cb.quasi_isometry_report(cub),
    }
    if args.out:
        _write_json(args.out, payload)
    else:
        _emit(payload)
    return 0


def _cmd_wreath(args):
    cfg = wr.wreath_config_from_json(_load_json(args.config))
    result = wr.build_wreath_graph(cfg, vertex_cap=args.cap)
    payload = {
        "graph": graph_to_json(result.graph),
        "supports": [sorted(s) for s in result.supports],
        "colorings": result.coloring_count,
        "move_pairs": [list(p) for p in result.move_pairs],
        "naive_mismatch_pairs": result.naive_mismatch_pairs,
    }
    if args.out:
        _write_json(args.out, payload)
    else:
        _emit(payload)
    return 0


def _cmd_corpus_run(args):
    from pathlib import Path

    manifest_path = Path(args.manifest)
    obj = _load_json(manifest_path)
    rows, graphs = corpus_mod.run_corpus(obj, manifest_path.parent)
    if _PRETTY:
        header = ("entry", "check", "passed", "detail")
        table = [header] + [(r.entry, r.check, str(r.passed), r.detail) for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        for row in table:
            print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    else:
        corpus_mod.write_csv(rows, sys.stdout)
    if args.report_dir:
        corpus_mod.write_report(rows, graphs, args.report_dir)
    return 0 if all(r.passed for r in rows) else 1


# -- parser ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmg",
        description="Quasi-median graph toolkit: recognition, hyperplanes, "
        "Cayley graphs of graph products, cubulation, wreath graphs.",
    )
    parser.add_argument(
        "--pretty",
        action="store_true",
        help="render human readable tables instead of JSON",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="quasi-median recognition verdict")
    p.add_argument("graph", help="graph JSON file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("median", help="median recognition verdict")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_median)

    p = sub.add_parser("hyperplanes", help="classes, sectors, fibers, carriers")
    p.add_argument("graph")
    p.add_argument("--carriers", action="store_true", help="include carrier product reports")
    p.add_argument("--crossing-dot", metavar="FILE", help="write the crossing graph as DOT")
    p.set_defaults(func=_cmd_hyperplanes)

    p = sub.add_parser("gen", help="generate a graph")
    gsub = p.add_subparsers(dest="family", required=True)
    gp_prism = gsub.add_parser("prism", help="product of complete graphs")
    gp_prism.add_argument("--sizes", required=True, help="comma separated clique sizes, e.g. 3,2")
    gp_rand = gsub.add_parser("random", help="random gated amalgam of prisms")
    gp_rand.add_argument("--seed", type=int, required=True)
    gp_rand.add_argument("--steps", type=int, required=True)
    gp_rand.add_argument("--max-prism", type=int, default=4)
    for sp in (gp_prism, gp_rand):
        sp.add_argument("-o", "--out", metavar="FILE", help="write graph JSON here instead of stdout")
        sp.add_argument("--dot", metavar="FILE", help="also write DOT")
        sp.set_defaults(func=_cmd_gen)

    p = sub.add_parser("gp-reduce", help="normal form of a graph product word")
    p.add_argument("presentation", help="presentation JSON file")
    p.add_argument("word", help="word as JSON, e.g. '[[0,1],[1,2]]'")
    p.set_defaults(func=_cmd_gp_reduce)

    p = sub.add_parser("gp-cayley", help="Cayley graph or ball of a graph product")
    p.add_argument("presentation")
    p.add_argument("--radius", type=int, help="ball radius; omit for the full graph")
    p.add_argument("--cap", type=int, default=100_000)
    p.add_argument("-o", "--out", metavar="FILE")
    p.set_defaults(func=_cmd_gp_cayley)

    p = sub.add_parser("relhyp", help="relative hyperbolicity of a graph product")
    p.add_argument("input", help="labelled defining graph or presentation JSON")
    p.add_argument("--maximal-joins", action="store_true", help="seed with maximal large joins only")
    p.add_argument("--cap", type=int, default=rh.DEFAULT_VERTEX_CAP)
    p.set_defaults(func=_cmd_relhyp)

    p = sub.add_parser("cubulate", help="dual cube complex 1-skeleton")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=200_000)
    p.add_argument("-o", "--out", metavar="FILE")
    p.set_defaults(func=_cmd_cubulate)

    p = sub.add_parser("wreath", help="graph of wreaths over a median host")
    p.add_argument("config", help="wreath configuration JSON file")
    p.add_argument("--cap", type=int, default=200_000)
    p.add_argument("-o", "--out", metavar="FILE")
    p.set_defaults(func=_cmd_wreath)

    p = sub.add_parser("corpus-run", help="run manifest checks, emit CSV and figures")
    p.add_argument("manifest", help="corpus manifest JSON file")
    p.add_argument("--report-dir", metavar="DIR", help="write report.csv and figures here")
    p.set_defaults(func=_cmd_corpus_run)

    return parser


def main(argv=None) -> int:
    global _PRETTY
    args = build_parser().parse_args(argv)
    _PRETTY = bool(getattr(args, "pretty", False))
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SchemaError as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
