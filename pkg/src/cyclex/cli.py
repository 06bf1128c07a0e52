"""Command-line entry point: ``cyclex <command> ...`` (see ``cyclex -h``).

Graph arguments are edge-list files, ``-`` for standard input, or
``gen:<family>`` for a generated graph (``gen:cycle:7``, ``gen:chain:K3,K3``).
Exit status is 0 on success, 1 on a domain error or a failed check, 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable, TextIO

from .convexity import hull, interval, is_convex, redundant_vertices
from .corpus import CORPORA, CorpusItem, corpus_generate
from .formulas import NotApplicable, exchange_formula, product_exchange
from .gadget import (
    CnfFormula,
    build_reduction,
    formula_corpus,
    format_dimacs,
    parse_dimacs,
    verify_reduction,
)
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    format_edge_list,
    generate,
    is_connected,
    parse_edge_list,
    product,
    require_connected,
)
from .independence import ExchangeResult, exchange_number_exact, is_C_independent, is_E_independent

CAP_ENV = "CYCLEX_EXACT_CAP"
DEFAULT_CAP = 20


class CliError(Exception):
    """A domain error reported as ``<prefix>: <message>`` with exit status 1."""

    def __init__(self, prefix: str, message: str):
        super().__init__(message)
        self.prefix = prefix


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError("cannot read file", f"{path}: {exc.strerror}") from exc


def load_graph(arg: str) -> Graph:
    if arg.startswith("gen:"):
        try:
            return generate(arg[4:])
        except GraphError as exc:
            raise CliError("bad generator", str(exc)) from exc
    text = _read_text(arg)
    try:
        return parse_edge_list(text)
    except GraphError as exc:
        raise CliError("malformed edge list", f"{arg}: {exc}") from exc


def load_formula(arg: str) -> CnfFormula:
    text = _read_text(arg)
    try:
        return parse_dimacs(text)
    except GraphError as exc:
        raise CliError("malformed DIMACS", f"{arg}: {exc}") from exc


def _connected(g: Graph) -> Graph:
    require_connected(g)
    return g


def parse_set(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise CliError("bad vertex set", repr(text)) from exc


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise CliError("bad environment", f"{CAP_ENV}={raw!r} is not an integer") from exc


def _fmt_set(s) -> str:
    return "{" + ", ".join(map(str, sorted(s))) + "}"


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


# -- commands -----------------------------------------------------------------


def cmd_hull(args, out: TextIO) -> int:
    g = load_graph(args.graph)
    trace = hull(g, parse_set(args.set))
    added = trace.added()
    if args.json:
        for k, vs in enumerate(added, 1):
            _dump({"round": k, "added": vs}, out)
        _dump({"final": sorted(trace.final), "rounds": len(added)}, out)
    else:
        for k, vs in enumerate(added, 1):
            out.write(f"round {k}: +{_fmt_set(vs)}\n")
        out.write(f"final: {_fmt_set(trace.final)} after {len(added)} round(s)\n")
    return 0


def cmd_interval(args, out: TextIO) -> int:
    g = load_graph(args.graph)
    res = interval(g, parse_set(args.set))
    if args.json:
        _dump({"interval": sorted(res)}, out)
    else:
        out.write(_fmt_set(res) + "\n")
    return 0


def cmd_convex_check(args, out: TextIO) -> int:
    g = load_graph(args.graph)
    s = parse_set(args.set)
    convex = is_convex(g, s)
    extra = sorted(interval(g, s) - set(s))
    if args.json:
        _dump({"convex": convex, "interval_extra": extra}, out)
    else:
        out.write("convex\n" if convex else f"not convex: interval adds {_fmt_set(extra)}\n")
    return 0


def cmd_e_independent(args, out: TextIO) -> int:
    g = load_graph(args.graph)
    s = parse_set(args.set)
    cert = is_E_independent(g, s)
    c_ind, c_witness = is_C_independent(g, s)
    redundant = sorted(redundant_vertices(g, s))
    if args.json:
        _dump({
            "e_independent": cert is not None,
            "certificate": cert.to_dict() if cert else None,
            "c_independent": c_ind,
            "c_witness": c_witness,
            "redundant": redundant,
        }, out)
    else:
        if cert is None:
            out.write("E-dependent\n")
        else:
            out.write(f"E-independent: pivot {cert.pivot}, anti-pivot {cert.anti_pivot}\n")
        out.write(f"C-independent: {'yes, witness ' + str(c_witness) if c_ind else 'no'}\n")
        out.write(f"redundant vertices: {_fmt_set(redundant)}\n")
    return 0


def _result_lines(res: ExchangeResult) -> list[str]:
    lines = [f"value: {res.value}", f"method: {res.method}"]
    if res.certificate is not None:
        c = res.certificate
        lines.append(f"certificate: {_fmt_set(c.set)} pivot {c.pivot} anti-pivot {c.anti_pivot}")
    return lines


def _exact(g: Graph, cap: int) -> ExchangeResult:
    if g.n > cap:
        raise CliError("over exact cap", f"{g.n} vertices exceeds the exact-solver cap {cap} (use --cap)")
    return exchange_number_exact(g)


def cmd_exchange(args, out: TextIO) -> int:
    g = _connected(load_graph(args.graph))
    cap = args.cap if args.cap is not None else default_cap()
    mode = args.mode or "auto"
    payload: dict
    lines: list[str]
    if mode == "exact":
        res = _exact(g, cap)
        payload, lines = {"status": "exact", **res.to_dict()}, _result_lines(res)
    else:
        outcome = exchange_formula(g)
        if outcome.applies:
            payload = {"status": "exact", **outcome.to_dict()}
            lines = _result_lines(outcome.result)
            if outcome.chain is not None:
                lines.append(f"chain: {len(outcome.chain.blocks_in_order)} block(s), "
                             f"longest non-K2 run {outcome.chain.longest_non_k2_run}")
                for rep in outcome.blocks:
                    lines.append(f"  block {_fmt_set(rep.block)}: end={rep.is_end_block} "
                                 f"edge-vertex={rep.edge_vertex} vertex-separation={rep.vertex_separation}")
        elif mode == "formula":
            payload = {"status": "not-applicable", "reason": outcome.result.reason}
            lines = [f"not applicable: {outcome.result.reason}"]
        elif g.n <= cap:
            res = exchange_number_exact(g)
            payload = {"status": "exact", "formula": outcome.result.reason, **res.to_dict()}
            lines = _result_lines(res) + [f"formula: not applicable ({outcome.result.reason})"]
        else:
            payload = {
                "status": "lower-bound", "value": 2, "method": "pair-bound",
                "formula": outcome.result.reason, "cap": cap,
            }
            lines = [
                "value: >= 2 (lower bound only)",
                f"no formula applies ({outcome.result.reason}) and {g.n} vertices exceeds the exact cap {cap}",
            ]
    if args.json:
        _dump(payload, out)
    else:
        out.write("\n".join(lines) + "\n")
    return 0


def cmd_product(args, out: TextIO) -> int:
    g = _connected(load_graph(args.g))
    h = _connected(load_graph(args.h))
    cap = args.cap if args.cap is not None else default_cap()
    prod = product(g, h, args.kind).graph
    res = product_exchange(g, h, args.kind, exact_cap=cap)
    payload = {"kind": args.kind, "n": prod.n, "m": prod.num_edges}
    if isinstance(res, NotApplicable):
        payload["formula"] = res.to_dict()
        lines = [f"formula: not applicable ({res.reason})"]
    else:
        payload["formula"] = res.to_dict()
        rel = "=" if res.status == "exact" else ">="
        lines = [f"formula: e {rel} {res.value} ({res.tag})"]
    if args.exact:
        ex = _exact(prod, cap)
        payload["exact"] = ex.to_dict()
        lines += ["exact:"] + ["  " + ln for ln in _result_lines(ex)]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(format_edge_list(prod))
    if args.json:
        _dump(payload, out)
    else:
        out.write(f"product: {prod.n} vertices, {prod.num_edges} edges\n" + "\n".join(lines) + "\n")
    return 0


def cmd_generate(args, out: TextIO) -> int:
    try:
        g = generate(args.family)
    except GraphError as exc:
        raise CliError("bad generator", str(exc)) from exc
    text = format_edge_list(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_reduce_sat(args, out: TextIO) -> int:
    phi = load_formula(args.cnf)
    red = build_reduction(phi)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(format_edge_list(red.graph))
    if args.labels:
        with open(args.labels, "w", encoding="utf-8") as fh:
            json.dump(red.metadata(), fh, sort_keys=True, indent=1)
    if not args.verify:
        if args.json:
            _dump({"edge_list": format_edge_list(red.graph), **red.metadata()}, out)
        elif not args.output:
            out.write(format_edge_list(red.graph))
        return 0
    verdict = verify_reduction(phi, time_limit=args.time_limit)
    if args.json:
        _dump(verdict.to_dict(), out)
    else:
        d = verdict.to_dict()
        out.write(f"verdict: {d['status']}\n")
        out.write(f"graph: {d['n']} vertices, k = {d['k']}\n")
        out.write(f"satisfiable: {d['satisfiable']}\n")
        out.write(f"E-independent set of size >= k: {d['large_set']}\n")
        if d["certificate"]:
            c = d["certificate"]
            labels = red.labels
            out.write(f"certificate: {' '.join(c['labels'])} (pivot {labels[c['pivot']]}, "
                      f"anti-pivot {labels[c['anti_pivot']]})\n")
        if d["forward_witness"]:
            out.write(f"forward witness: {' '.join(d['forward_witness'])}\n")
        for name, ok in d["checks"].items():
            out.write(f"check {name}: {'ok' if ok else 'FAILED'}\n")
    return 0 if verdict.status == "consistent" else 1


def _verify_graph_items(items: list[CorpusItem], cap: int) -> list[dict]:
    rows = []
    for it in items:
        row = {**it.to_dict(), "exact": None, "result": "n/a"}
        if it.expected is not None:
            if it.graph.n > cap:
                row["result"] = "skipped"
            else:
                value = exchange_number_exact(it.graph).value
                row["exact"] = value
                ok = value == it.expected if it.status == "exact" else value >= it.expected
                row["result"] = "pass" if ok else "fail"
        rows.append(row)
    return rows


def _verify_reduction_items(time_limit: float | None) -> list[dict]:
    rows = []
    for phi in formula_corpus():
        v = verify_reduction(phi, time_limit=time_limit)
        ok = v.status == "consistent" and all(v.checks.values())
        rows.append({
            "name": " ".join(format_dimacs(phi).splitlines()[1:]),
            "n": v.reduction.graph.n,
            "satisfiable": v.satisfiable,
            "large_set": v.large_set,
            "status": v.status,
            "checks": v.checks,
            "result": "pass" if ok else ("timeout" if v.status == "timeout" else "fail"),
        })
    return rows


def cmd_verify(args, out: TextIO) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    if args.corpus == "reduction":
        rows = _verify_reduction_items(args.time_limit)
        columns = ["name", "n", "satisfiable", "large_set", "status", "result"]
    else:
        try:
            items = corpus_generate(args.corpus, seed=args.seed, max_blocks=args.max_blocks)
        except GraphError as exc:
            raise CliError("bad corpus", str(exc)) from exc
        rows = _verify_graph_items(items, cap)
        columns = ["name", "n", "expected", "status", "tag", "exact", "result"]
    counts: dict[str, int] = {}
    for r in rows:
        counts[r["result"]] = counts.get(r["result"], 0) + 1
    if args.json:
        _dump({"corpus": args.corpus, "rows": rows, "summary": dict(sorted(counts.items()))}, out)
    else:
        table = [columns] + [[str(r[c]) for c in columns] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
        for row in table:
            out.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")
        out.write("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())) + "\n")
    return 1 if counts.get("fail") or counts.get("timeout") else 0


def cmd_bench(args, out: TextIO) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    try:
        items = corpus_generate(args.corpus, seed=args.seed, max_blocks=args.max_blocks)
    except GraphError as exc:
        raise CliError("bad corpus", str(exc)) from exc
    rows = []
    total = 0.0
    for it in items:
        if it.graph.n > cap or not is_connected(it.graph):
            continue
        t0 = time.perf_counter()
        value = exchange_number_exact(it.graph).value
        dt = time.perf_counter() - t0
        total += dt
        rows.append({"name": it.name, "n": it.graph.n, "exact": value, "seconds": round(dt, 6)})
    if args.json:
        _dump({"corpus": args.corpus, "rows": rows, "total_seconds": round(total, 6)}, out)
    else:
        for r in rows:
            out.write(f"{r['name']:<40} n={r['n']:<3} e={r['exact']:<3} {r['seconds'] * 1000:9.2f} ms\n")
        out.write(f"total: {len(rows)} instance(s) in {total:.3f} s\n")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclex", description="Cycle-convexity invariants of graphs.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    for name, fn, help_ in (
        ("hull", cmd_hull, "convex hull of a vertex set, round by round"),
        ("interval", cmd_interval, "one application of the cycle interval"),
        ("convex-check", cmd_convex_check, "whether a vertex set is convex"),
        ("e-independent", cmd_e_independent, "E- and C-independence of a vertex set"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("graph", help="edge-list file, '-' or gen:<family>")
        sp.add_argument("--set", required=True, help="comma-separated vertex ids")

    sp = add("exchange", cmd_exchange, "exchange number of a connected graph")
    sp.add_argument("graph", help="edge-list file, '-' or gen:<family>")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact", help="exact search only")
    mode.add_argument("--formula", dest="mode", action="store_const", const="formula", help="closed formulas only")
    mode.add_argument("--auto", dest="mode", action="store_const", const="auto",
                      help="formula, else exact search up to the cap (default)")
    sp.add_argument("--cap", type=int, help=f"exact-solver vertex cap (default ${CAP_ENV} or {DEFAULT_CAP})")

    sp = add("product", cmd_product, "exchange number of a graph product")
    sp.add_argument("g", help="first factor")
    sp.add_argument("h", help="second factor")
    sp.add_argument("--kind", choices=["cartesian", "strong", "lexicographic"], default="cartesian")
    sp.add_argument("--exact", action="store_true", help="also run the exact solver on the product")
    sp.add_argument("--cap", type=int)
    sp.add_argument("-o", "--output", help="write the product's edge list here")

    sp = add("generate", cmd_generate, "write a generated graph as an edge list")
    sp.add_argument("family", help="e.g. cycle:7, multipartite:2,3, unicyclic:4,0,0, chain:K3,K2,K4")
    sp.add_argument("-o", "--output")

    sp = add("reduce-sat", cmd_reduce_sat, "build the 3-SAT reduction graph from a DIMACS file")
    sp.add_argument("cnf", help="DIMACS CNF file or '-'")
    sp.add_argument("-o", "--output", help="write the edge list here")
    sp.add_argument("--labels", help="write the JSON label map here")
    sp.add_argument("--verify", action="store_true", help="check satisfiability against the graph")
    sp.add_argument("--time-limit", type=float, help="seconds for the set search")

    for name, fn, help_ in (
        ("verify", cmd_verify, "formula-vs-exact table over a generated corpus"),
        ("bench", cmd_bench, "time the exact solver over a generated corpus"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("--corpus", required=True,
                        help="corpus spec, e.g. 'cycles n=3..10', 'chain K3x3', chordal-chains, "
                             "'cartesian K2xK2..K4xP4'" + (", reduction" if name == "verify" else "")
                        + f"; families: {', '.join(CORPORA)}")
        sp.add_argument("--max-blocks", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cap", type=int)
        if name == "verify":
            sp.add_argument("--time-limit", type=float, help="seconds per reduction search")
    return p


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CliError as exc:
        err.write(f"{exc.prefix}: {exc}\n")
    except DisconnectedGraphError as exc:
        err.write(f"disconnected graph: {exc}\n")
    except GraphError as exc:
        err.write(f"invalid input: {exc}\n")
    except OSError as exc:
        err.write(f"cannot write file: {exc}\n")
    return 1


def main() -> None:
    sys.exit(run())
