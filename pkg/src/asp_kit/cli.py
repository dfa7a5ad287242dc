"""``asp-kit`` command line.

Exit codes:
  classify  0 = in the class (ASP, or ASP-P with --aspp), 1 = not, 2 = error
  color     0 = colored, 1 = NotASP/NotASPP, 2 = error, 3 = clique exception
  generate  0 = written, 2 = bad parameters
  verify    0 = all checks pass, 1 = some mismatch
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import generators as gen
from .chromatic import brooks_color3, color_asp, color_aspp, exact_coloring
from .classifier import MIN_RIM, classify, classify_by_oracle
from .errors import AspKitError, CliqueException, NotASP, NotASPP, PreconditionViolated, SizeLimitExceeded
from .graph import Graph
from .io import format_graph, read_graph, to_dot
from .oracle import ASP_FORBIDDEN, ASPP_FORBIDDEN, find_forbidden_local

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_CLIQUE = 0, 1, 2, 3


def _emit(record: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(record, sort_keys=True, default=str) + "\n")
        return
    for key in sorted(record):
        val = record[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True, default=str)
        out.write(f"{key}: {val}\n")


def _witness_edges(w) -> list:
    return [e for p in w.branch_paths for e in zip(p, p[1:])]


def _write_dot(path: str, g: Graph, witness) -> None:
    text = to_dot(g, _witness_edges(witness) if witness is not None else ())
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    g = read_graph(args.input)
    t0 = time.perf_counter()
    res = classify_by_oracle(g) if args.oracle else classify(g)
    witness = res.witness
    member = res.verdict.is_aspp() if args.aspp else res.verdict.is_asp()
    if args.aspp and not member and witness is None:
        witness = find_forbidden_local(g, ASPP_FORBIDDEN)
    record = res.as_dict()
    record.update(
        file=str(args.input),
        n=g.n,
        m=g.m,
        member=member,
        target="ASP-P" if args.aspp else "ASP",
        witness=None if witness is None else witness.as_dict(),
        seconds=round(time.perf_counter() - t0, 4),
    )
    if args.oracle:
        record.pop("receptacles", None)
    _emit(record, args.json)
    if args.dot:
        _write_dot(args.dot, g, witness)
    return EXIT_OK if member else EXIT_NO


# ---------------------------------------------------------------------------
# color
# ---------------------------------------------------------------------------


def _coloring_record(g: Graph, coloring, method: str, t0: float) -> dict:
    return {
        "method": method,
        "n": g.n,
        "palette_size": coloring.palette_size,
        "coloring": {str(v): coloring[v] for v in g.vertices},
        "seconds": round(time.perf_counter() - t0, 4),
    }


def _print_coloring(g: Graph, coloring, header: str) -> None:
    print(f"# {header}")
    for v in g.vertices:
        print(f"{v}:{coloring[v]}")


def cmd_color(args) -> int:
    g = read_graph(args.input)
    t0 = time.perf_counter()
    if args.exact:
        method, run = "exact", exact_coloring
    else:
        method, run = {5: ("color_asp", color_asp), 4: ("color_aspp", color_aspp), 3: ("brooks", brooks_color3)}[args.k]
    try:
        coloring = run(g)
    except CliqueException as exc:
        record = _coloring_record(g, exc.coloring, method, t0)
        record["exception"] = type(exc).__name__
        if args.json:
            _emit(record, True)
        else:
            print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
            _print_coloring(g, exc.coloring, f"{exc.coloring.palette_size} colors ({type(exc).__name__})")
        return EXIT_CLIQUE
    except NotASP as exc:
        forbidden = ASPP_FORBIDDEN if isinstance(exc, NotASPP) else ASP_FORBIDDEN
        witness = exc.witness or find_forbidden_local(g, forbidden)
        record = {"method": method, "exception": type(exc).__name__, "message": str(exc),
                  "witness": None if witness is None else witness.as_dict()}
        _emit(record, args.json)
        return EXIT_NO
    if args.json:
        _emit(_coloring_record(g, coloring, method, t0), True)
    else:
        _print_coloring(g, coloring, f"{coloring.palette_size} colors ({method})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def _seed_graph(name: str) -> Graph:
    s = name.lower()
    if s == "prism":
        return gen.prism()
    if s == "petersen":
        return gen.petersen()
    if s[:1] in "ck" and s[1:].isdigit():
        n = int(s[1:])
        return gen.cycle(n) if s[0] == "c" else gen.complete_graph(n)
    raise argparse.ArgumentTypeError(f"unknown seed graph {name!r} (use cN, kN, prism, petersen)")


def _ints(params, count: int, family: str) -> list[int]:
    if len(params) != count:
        raise argparse.ArgumentTypeError(f"{family} takes {count} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{family} parameters must be integers") from None


def _build(family: str, params: list[str], args) -> Graph:
    simple = {
        "wheel": gen.wheel,
        "spoked": gen.spoked,
        "wheel-mod": gen.wheel_mod,
        "k3r": gen.k3r,
        "d": gen.d_graph,
        "d-mod": gen.d_mod,
        "complete": gen.complete_graph,
        "cycle": gen.cycle,
        "path": gen.path_graph,
    }
    if family in simple:
        (r,) = _ints(params, 1, family)
        return simple[family](r)
    if family == "prism":
        _ints(params, 0, family)
        return gen.prism()
    if family == "petersen":
        _ints(params, 0, family)
        return gen.petersen()
    if family == "k33":
        _ints(params, 0, family)
        return gen.complete_bipartite(3, 3)
    if family == "truncated-cubic":
        import random

        (n,) = _ints(params, 1, family)
        return gen.truncate_cubic(gen.random_cubic(random.Random(args.seed), n))
    if family in ("gadget-y", "gadget-k5minus", "gadget-wheelminus"):
        if family == "gadget-wheelminus":
            if len(params) != 2:
                raise argparse.ArgumentTypeError("gadget-wheelminus takes R and a seed graph")
            gadget = gen.wheel_minus(_ints(params[:1], 1, family)[0])
            seed = params[1]
        else:
            if len(params) != 1:
                raise argparse.ArgumentTypeError(f"{family} takes a seed graph")
            gadget = gen.y_gadget() if family == "gadget-y" else gen.k5_minus()
            seed = params[0]
        return gen.replace_edges(_seed_graph(seed), gadget, skip=tuple(args.skip) if args.skip else None)
    raise argparse.ArgumentTypeError(f"unknown family {family!r}")


def _stem(family: str, params, args) -> str:
    parts = [family] + [str(p) for p in params]
    if family == "truncated-cubic":
        parts.append(f"seed{args.seed}")
    if args.skip:
        parts.append("skip{}-{}".format(*args.skip))
    return "_".join(parts)


def cmd_generate(args) -> int:
    out = Path(args.out)
    if args.family == "corpus":
        if args.params:
            raise argparse.ArgumentTypeError("corpus takes no positional parameters; use --count/--seed")
        corpus = gen.random_asp_corpus(args.seed, args.count, (args.min_n, args.max_n), aspp_only=args.aspp_only)
        out.mkdir(parents=True, exist_ok=True)
        manifest = out / f"corpus_seed{args.seed}_manifest.jsonl"
        with open(manifest, "w", encoding="ascii", newline="\n") as fh:
            for i, item in enumerate(corpus):
                name = f"corpus_seed{args.seed}_{i:04d}.txt"
                (out / name).write_text(
                    format_graph(item.graph, [f"label {item.label.label}", f"family {item.family}"]),
                    encoding="ascii",
                )
                row = {"file": name, "label": item.label.label, "family": item.family, "n": item.graph.n, "m": item.graph.m}
                fh.write(json.dumps(row, sort_keys=True) + "\n")
        print(f"wrote {len(corpus)} graphs and {manifest}")
        return EXIT_OK
    g = _build(args.family, args.params, args)
    text = format_graph(g, [" ".join([args.family] + args.params)])
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    out.mkdir(parents=True, exist_ok=True)
    path = out / (_stem(args.family, args.params, args) + ".txt")
    path.write_text(text, encoding="ascii")
    print(f"wrote {path} ({g.n} vertices, {g.m} edges)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_verify

    checks = tuple(args.checks.split(",")) if args.checks else CHECKS
    report = run_verify(args.max_n, args.jobs, checks, args.min_rim)
    if args.json:
        _emit(report.as_dict(), True)
    else:
        print(f"graphs: {report.graphs} (n <= {report.max_n}) in {report.seconds:.1f}s")
        print("verdicts: " + ", ".join(f"{k} {v}" for k, v in sorted(report.verdicts.items())))
        for c in checks:
            fails = sum(1 for m in report.mismatches if m["check"] == c)
            print(f"{c}: {report.checked[c]} checked, {fails} mismatches")
        for m in report.mismatches[: args.show]:
            print(f"  [{m['check']}] n={m['n']} edges={m['edges']}: {m['detail']}")
    return EXIT_OK if report.ok else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asp-kit", description="Recognise and color ASP graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a graph file")
    c.add_argument("input")
    c.add_argument("--oracle", action="store_true", help="use the exhaustive search only")
    c.add_argument("--aspp", action="store_true", help="test ASP-P membership instead of ASP")
    c.add_argument("--json", action="store_true")
    c.add_argument("--dot", metavar="PATH", help="write DOT with the witness highlighted ('-' for stdout)")
    c.set_defaults(func=cmd_classify)

    k = sub.add_parser("color", help="color a graph file")
    k.add_argument("input")
    k.add_argument("--k", type=int, choices=(3, 4, 5), default=5)
    k.add_argument("--exact", action="store_true", help="use the exact solver")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_color)

    g = sub.add_parser("generate", help="write generated graphs")
    g.add_argument("family", help="wheel, spoked, wheel-mod, k3r, d, d-mod, complete, cycle, path, prism, "
                                  "petersen, k33, truncated-cubic, gadget-y, gadget-k5minus, gadget-wheelminus, corpus")
    g.add_argument("params", nargs="*")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=10)
    g.add_argument("--min-n", type=int, default=7)
    g.add_argument("--max-n", type=int, default=500)
    g.add_argument("--aspp-only", action="store_true")
    g.add_argument("--skip", type=int, nargs=2, metavar=("U", "V"), help="seed edge left unreplaced (gadgets)")
    g.add_argument("--out", default=".", help="output directory, or '-' for stdout")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="exhaustive cross-checks on small graphs")
    v.add_argument("--max-n", type=int, default=8)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--checks", help="comma-separated subset of classifier,receptacles,normalization,coloring")
    v.add_argument("--min-rim", type=int, default=MIN_RIM, help="structural rim bound; lowering it injects a known-bad classifier")
    v.add_argument("--show", type=int, default=20, help="mismatches to print")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AspKitError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        kind = "size limit" if isinstance(exc, SizeLimitExceeded) else (
            "precondition" if isinstance(exc, PreconditionViolated) else "error")
        print(f"asp-kit: {kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
