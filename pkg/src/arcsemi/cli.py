"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 disagreement between a fast route and
enumeration (or a failed verification sweep).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import families
from .classifier import PROPERTIES, PropertyReport, classify
from .cyclelength import (
    BENCH_FAMILIES,
    bench_decide,
    decide_l_leq_k,
    fit_linear,
    l_components,
)
from .digraph import (
    Digraph,
    Graph,
    ParseError,
    closure,
    format_digraph,
    parse_digraph,
    strong_components,
    terminal_components,
    underlying_graph,
    weak_components,
)
from .isomorphism import MAX_LABELED_N, canonical_codes, from_code
from .oracle import ElementCapExceeded, default_cap, generate, l_brute, probe
from .verify import run_verify

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DISAGREE = 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class AnalysisDocument:
    n: int
    arcs: list
    closure_added: list
    strong_components: list
    weak_components: list
    terminal_components: list
    properties: dict
    predicted_size: int | None
    l: int | None = None
    l_status: str = "skipped"
    l_components: list = field(default_factory=list)
    oracle: dict | None = None
    oracle_status: str = "skipped"
    disagreements: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> AnalysisDocument:
        return cls(**doc)

    @classmethod
    def from_json(cls, text: str) -> AnalysisDocument:
        return cls.from_dict(json.loads(text))

    def report(self) -> PropertyReport:
        return PropertyReport.from_dict({"properties": self.properties, "predicted_size": self.predicted_size})


def analyze(D: Digraph, run_oracle: bool = False, compute_l: bool = True, cap: int | None = None) -> AnalysisDocument:
    timings = {}
    t0 = time.perf_counter()
    rep = classify(D)
    timings["classify"] = time.perf_counter() - t0
    Dc = closure(D)
    doc = AnalysisDocument(
        n=D.n,
        arcs=[list(a) for a in D.sorted_arcs()],
        closure_added=[list(a) for a in Dc.sorted_arcs() if not D.has_arc(*a)],
        strong_components=[list(c) for c in strong_components(D)],
        weak_components=[list(c) for c in weak_components(D)],
        terminal_components=[list(c) for c in terminal_components(D)],
        properties=rep.to_dict()["properties"],
        predicted_size=rep.predicted_size,
    )
    if compute_l and D.num_arcs:
        t0 = time.perf_counter()
        try:
            comps = l_components(D, cap)
            doc.l = max(c.l for c in comps)
            doc.l_components = [{"vertices": list(c.vertices), "l": c.l, "method": c.method} for c in comps]
            doc.l_status = "ok"
        except ElementCapExceeded as exc:
            doc.l_status = f"aborted at cap ({exc.count} elements found)"
        timings["l"] = time.perf_counter() - t0
    if run_oracle:
        if D.num_arcs == 0:
            doc.oracle_status = "refused: no arcs"
        else:
            t0 = time.perf_counter()
            try:
                S = generate(D, cap)
                o = probe(S)
                doc.oracle = o.to_dict() | {"flags": o.flags()}
                doc.oracle_status = "ok"
                for name, verdict in rep.applicable().items():
                    ov = o.flags().get(name)
                    if ov is not None and ov != verdict:
                        doc.disagreements.append({"property": name, "classifier": verdict, "oracle": ov})
                if rep.predicted_size is not None and rep.predicted_size != o.size:
                    doc.disagreements.append(
                        {"property": "predicted_size", "classifier": rep.predicted_size, "oracle": o.size})
                if doc.l is not None and doc.l != o.longest_cycle:
                    doc.disagreements.append({"property": "l", "classifier": doc.l, "oracle": o.longest_cycle})
            except ElementCapExceeded as exc:
                doc.oracle_status = f"aborted at cap ({exc.count} elements found)"
            timings["oracle"] = time.perf_counter() - t0
    doc.timings = timings
    return doc


def _fmt(v) -> str:
    return {True: "true", False: "false", None: "n/a"}.get(v, str(v)) if isinstance(v, (bool, type(None))) else str(v)


def render_text(doc: AnalysisDocument) -> str:
    lines = [f"digraph: n={doc.n} arcs={len(doc.arcs)}"]
    if doc.closure_added:
        lines.append(f"closure adds: {doc.closure_added}")
    lines.append(f"strong components: {doc.strong_components}")
    lines.append(f"terminal components: {doc.terminal_components}")
    lines.append("")
    oracle_flags = doc.oracle["flags"] if doc.oracle else {}
    header = f"{'property':22} {'classifier':10} {'oracle':7} rule"
    lines.append(header)
    for name in PROPERTIES:
        p = doc.properties[name]
        ov = _fmt(oracle_flags.get(name)) if doc.oracle else "-"
        lines.append(f"{name:22} {_fmt(p['verdict']):10} {ov:7} {p['proposition']}")
    if doc.predicted_size is not None:
        lines.append(f"predicted size: {doc.predicted_size}")
    lines.append("")
    lines.append(f"l: {doc.l if doc.l is not None else '-'} ({doc.l_status})")
    lines.append(f"oracle: {doc.oracle_status}" + (f", |S| = {doc.oracle['size']}" if doc.oracle else ""))
    if doc.disagreements:
        lines.append("")
        lines.append("!!! DISAGREEMENT between classifier and oracle !!!")
        for d in doc.disagreements:
            lines.append(f"  {d['property']}: classifier={d['classifier']} oracle={d['oracle']}")
    return "\n".join(lines)


def _read_digraph(path: str) -> Digraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_digraph(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_graph(path: str) -> Graph:
    D = _read_digraph(path)
    return underlying_graph(D)


def _cap(args) -> int:
    if getattr(args, "cap", None) is not None:
        if args.cap < 1:
            raise InputError("--cap must be positive")
        return args.cap
    try:
        return default_cap()
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- subcommands ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    D = _read_digraph(args.path)
    doc = analyze(D, run_oracle=args.oracle, compute_l=not args.no_l, cap=_cap(args))
    print(doc.to_json() if args.json else render_text(doc))
    return EXIT_DISAGREE if doc.disagreements else EXIT_OK


def cmd_l(args) -> int:
    D = _read_digraph(args.path)
    if D.num_arcs == 0:
        raise InputError("the digraph has no arcs")
    cap = _cap(args)
    try:
        comps = l_components(D, cap)
        brute = l_brute(D, cap) if args.check else None
    except ElementCapExceeded as exc:
        print(f"aborted at cap: {exc}", file=sys.stderr)
        return EXIT_INPUT
    value = max(c.l for c in comps)
    if args.json:
        print(json.dumps({"l": value, "components": [asdict(c) for c in comps], "enumerated": brute}))
    else:
        print(f"l\t{value}")
        for c in comps:
            print(f"component\t{list(c.vertices)}\t{c.l}\t{c.method}")
        if brute is not None:
            print(f"enumerated\t{brute}")
    return EXIT_DISAGREE if brute is not None and brute != value else EXIT_OK


def cmd_decide(args) -> int:
    G = _read_graph(args.path)
    try:
        d = decide_l_leq_k(G, args.k, args.brute_force_limit, _cap(args))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = d.to_dict()
    code = EXIT_OK
    if args.check:
        l = l_brute(G, _cap(args))
        out["enumerated_l"] = l
        out["agree"] = d.verdict == (l <= args.k)
        code = EXIT_OK if out["agree"] else EXIT_DISAGREE
    if args.json:
        print(json.dumps(out))
    else:
        print(f"{'Yes' if d.verdict else 'No'}\tstep {d.step}\t{d.path_taken}\t{json.dumps(d.details)}")
        if args.check:
            print(f"enumerated l = {out['enumerated_l']}: {'agree' if out['agree'] else 'DISAGREE'}")
    return code


def census_counts(n: int, up_to_iso: bool, properties=PROPERTIES, cap: int | None = None) -> tuple[dict, int]:
    """Digraphs on n vertices with each property (labelled or up to isomorphism).

    The classifier answers where it applies; enumeration answers the rest.
    Digraphs without arcs have no semigroup and are never counted.
    """
    if not 1 <= n <= MAX_LABELED_N:
        raise InputError(f"census supports 1 <= n <= {MAX_LABELED_N}")
    canon = canonical_codes(np.arange(1 << (n * (n - 1)), dtype=np.int64), n)
    reps, weights = np.unique(canon, return_counts=True)
    if up_to_iso:
        weights = np.ones_like(weights)
    counts = {p: 0 for p in properties}
    for code, w in zip(reps.tolist(), weights.tolist()):
        D = from_code(code, n)
        if D.num_arcs == 0:
            continue
        flags = classify(D).flags()
        oracle = None
        for p in properties:
            v = flags[p]
            if v is None:
                if oracle is None:
                    oracle = probe(generate(D, cap)).flags()
                v = oracle[p]
            if v:
                counts[p] += w
    return counts, int(weights.sum())


def _write_outputs(prefix: str | None, tsv: str) -> Path | None:
    if prefix is None:
        return None
    p = Path(prefix)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.with_suffix(".tsv").write_text(tsv)
    return p


def cmd_census(args) -> int:
    props = args.property or list(PROPERTIES)
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise InputError(f"unknown properties {unknown}; known: {', '.join(PROPERTIES)}")
    counts, total = census_counts(args.n, args.up_to_iso, props, _cap(args))
    kind = "iso" if args.up_to_iso else "labelled"
    tsv = "property\tcount\ttotal\tn\tkind\n" + "".join(
        f"{p}\t{c}\t{total}\t{args.n}\t{kind}\n" for p, c in counts.items())
    print(tsv, end="")
    prefix = _write_outputs(args.out, tsv)
    if prefix is not None:
        from .plotting import plot_census
        plot_census(counts, total, prefix.with_suffix(".png"), f"n = {args.n}, {kind}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        rep = run_verify(args.n_max, args.k_max, args.seed, args.samples)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        print(json.dumps(rep.to_dict()))
    else:
        print("\n".join(rep.lines()))
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return vals


def cmd_bench(args) -> int:
    if args.family not in BENCH_FAMILIES:
        raise InputError(f"unknown family {args.family!r}; known: {', '.join(BENCH_FAMILIES)}")
    try:
        rows = bench_decide(args.family, args.sizes, args.k, args.repeats, args.brute_force_limit)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    fit = fit_linear([r.n for r in rows], [r.seconds for r in rows]) if len(rows) >= 2 else None
    lines = ["family\tn\tk\tseconds\tseconds_per_n\tpath\tstep"]
    for r in rows:
        lines.append(f"{r.family}\t{r.n}\t{r.k}\t{r.seconds:.6g}\t{r.per_vertex:.6g}\t{r.path_taken}\t{r.step}")
    if fit is not None:
        lines.append(f"# fit: seconds = {fit.slope:.6g} * n + {fit.intercept:.6g}; "
                     f"max relative deviation {fit.max_relative_deviation:.3f}")
    tsv = "\n".join(lines) + "\n"
    print(tsv, end="")
    prefix = _write_outputs(args.out, tsv)
    if prefix is not None:
        from .plotting import plot_bench
        plot_bench(rows, fit, prefix.with_suffix(".png"))
    return EXIT_OK


def _parse_member(spec: str) -> Graph:
    """``name:int,int`` such as ``complete:3`` or ``star:3``; ``K1`` is the one-vertex graph."""
    if spec == "K1":
        return Graph(1)
    name, _, params = spec.partition(":")
    try:
        vals = [int(x) for x in params.split(",") if x]
        G = families.construct(name, *vals)
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(f"bad graph spec {spec!r}: {exc}") from None
    return G


def cmd_gen(args) -> int:
    try:
        if args.family == "oplus":
            if args.left is None or args.right is None or args.q is None:
                raise InputError("oplus needs --left, --q and --right")
            D = families.oplus(_parse_member(args.left), args.q, _parse_member(args.right),
                               args.attach_left, args.attach_right).graph
        else:
            D = families.construct(args.family, *args.params)
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(str(exc)) from None
    text = format_digraph(D, comment=f"{args.family} {' '.join(map(str, args.params))}".strip())
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arcsemi", description="Arc-generated transformation semigroups of digraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="classify a digraph, optionally checking against enumeration")
    a.add_argument("path", help="edge-list file, or - for stdin")
    a.add_argument("--oracle", action="store_true", help="also enumerate the semigroup and compare")
    a.add_argument("--json", action="store_true")
    a.add_argument("--no-l", action="store_true", help="skip computing l")
    a.add_argument("--cap", type=int, help="element cap for enumeration")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("l", help="longest cycle length over the semigroup")
    a.add_argument("path")
    a.add_argument("--check", action="store_true", help="also enumerate and compare")
    a.add_argument("--json", action="store_true")
    a.add_argument("--cap", type=int)
    a.set_defaults(func=cmd_l)

    a = sub.add_parser("decide", help="decide l(G) <= k for a connected graph")
    a.add_argument("path")
    a.add_argument("-k", "--k", type=int, required=True)
    a.add_argument("--brute-force-limit", type=int, default=8,
                   help="enumerate small graphs with at most this many vertices")
    a.add_argument("--check", action="store_true", help="also enumerate and compare")
    a.add_argument("--json", action="store_true")
    a.add_argument("--cap", type=int)
    a.set_defaults(func=cmd_decide)

    a = sub.add_parser("census", help="count digraphs on n vertices with each property")
    a.add_argument("n", type=int)
    a.add_argument("--up-to-iso", action="store_true")
    a.add_argument("--property", action="append", help="restrict to this property (repeatable)")
    a.add_argument("--out", help="write PREFIX.tsv and PREFIX.png")
    a.add_argument("--cap", type=int)
    a.set_defaults(func=cmd_census)

    a = sub.add_parser("verify", help="exhaustive and seeded agreement sweeps")
    a.add_argument("--n-max", type=int, default=4)
    a.add_argument("--k-max", type=int, default=3)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--samples", type=int, default=20)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_verify)

    a = sub.add_parser("bench", help="time decide on a graph family")
    a.add_argument("--family", default="Q", help=f"one of {', '.join(BENCH_FAMILIES)}")
    a.add_argument("--sizes", type=_int_list, default=[1000, 10000, 100000, 1000000])
    a.add_argument("-k", "--k", type=int, default=2)
    a.add_argument("--repeats", type=int, default=5)
    a.add_argument("--brute-force-limit", type=int, default=8)
    a.add_argument("--out", help="write PREFIX.tsv and PREFIX.png")
    a.set_defaults(func=cmd_bench)

    a = sub.add_parser("gen", help="write a named graph or digraph as an edge list")
    a.add_argument("family", help=f"one of {', '.join(families.FAMILIES)}")
    a.add_argument("params", nargs="*", type=int)
    a.add_argument("--left", help="oplus: left graph, e.g. complete:3 or K1")
    a.add_argument("--right", help="oplus: right graph")
    a.add_argument("--q", type=int, help="oplus: vertices on the joining path")
    a.add_argument("--attach-left", type=int, default=1)
    a.add_argument("--attach-right", type=int, default=1)
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
