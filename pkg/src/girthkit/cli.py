"""Command line front end.

Subcommands mirror the library surface: exact and approximate girth,
spanner construction and verification, degree reduction, instance
generation, benchmarking, and the recursion exponent table. Output is
human-oriented text by default; ``--json`` switches every subcommand to a
single JSON object tagged ``"schema": 1``.

Exit codes: 0 success, 2 bad usage or parameters, 3 unreadable or
malformed input files, 4 a violated self-check (failed spanner
verification, broken internal contract).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import statistics
import sys
import time

import numpy as np

from .errors import (
    CapExceededError,
    ContractViolationError,
    GirthkitError,
    GraphInputError,
    InvalidParametersError,
    NotASubgraphError,
    ParseError,
)
from .graph import (
    DirectedGraph,
    bidirected_grid,
    directed_cycle,
    directed_gnm,
    layered_cycle,
    read_graph,
    write_graph,
)
from .hardness import gap_instance
from .multilevel import girth_approx_2k, girth_approx_strongpoly, solve_alpha
from .oracle import ORACLE_CAP, exact_girth, verify_spanner
from .rng import fresh_seed, stream
from .transform import reduce_unweighted, reduce_weighted, write_reduced
from .unweighted import girth_approx_unweighted
from .weighted import build_roundtrip_spanner, girth_approx_weighted


def _default_threads() -> int:
    raw = os.environ.get("GIRTHKIT_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit_json(payload: dict) -> None:
    print(json.dumps({"schema": 1, **payload}))


def _pick_seed(args) -> int:
    return fresh_seed() if args.seed is None else int(args.seed)


def _walk_text(walk: list[int]) -> str:
    return " -> ".join(str(v) for v in walk)


def _print_girth_result(r, elapsed_ms: float) -> None:
    if r.seed is not None:
        print(f"seed {r.seed}")
    if r.is_acyclic:
        print("acyclic: the graph has no directed cycle")
    else:
        print(f"estimate {int(r.estimate)} ({r.guarantee})")
        print(f"witness {_walk_text(r.witness)}")
    print(f"elapsed {elapsed_ms:.1f} ms")


def _finish_girth(args, r, elapsed_ms: float, extra: dict | None = None) -> int:
    if args.json:
        payload = r.to_json()
        payload["elapsed_ms"] = round(elapsed_ms, 3)
        payload.update(extra or {})
        _emit_json(payload)
    else:
        _print_girth_result(r, elapsed_ms)
    return 0


# -- subcommands -------------------------------------------------------------


def _cmd_exact(args) -> int:
    g = read_graph(args.input)
    t0 = time.perf_counter()
    r = exact_girth(g)
    ms = (time.perf_counter() - t0) * 1000.0
    if args.json:
        _emit_json({
            "girth": None if r.is_acyclic else int(r.estimate),
            "acyclic": r.is_acyclic,
            "witness": r.witness,
            "elapsed_ms": round(ms, 3),
        })
    else:
        if r.is_acyclic:
            print("acyclic: the graph has no directed cycle")
        else:
            print(f"girth {int(r.estimate)}")
            print(f"witness {_walk_text(r.witness)}")
        print(f"elapsed {ms:.1f} ms")
    return 0


def _cmd_approx2(args) -> int:
    g = read_graph(args.input)
    if g.weighted:
        raise InvalidParametersError(
            "approx2 handles unweighted graphs; use approx2eps for weights")
    seed = _pick_seed(args)
    t0 = time.perf_counter()
    r = girth_approx_unweighted(g, seed, delta=args.delta)
    ms = (time.perf_counter() - t0) * 1000.0
    return _finish_girth(args, r, ms)


def _cmd_approx2eps(args) -> int:
    g = read_graph(args.input)
    seed = _pick_seed(args)
    t0 = time.perf_counter()
    if args.strong_poly:
        r = girth_approx_strongpoly(g, k=args.k, eps=args.eps, seed=seed)
    else:
        r = girth_approx_weighted(g, eps=args.eps, seed=seed)
    ms = (time.perf_counter() - t0) * 1000.0
    return _finish_girth(args, r, ms)


def _cmd_approx2k(args) -> int:
    g = read_graph(args.input)
    seed = _pick_seed(args)
    trace: list[dict] | None = [] if args.trace else None
    t0 = time.perf_counter()
    r = girth_approx_2k(g, args.k, eps=args.eps, seed=seed, trace=trace)
    ms = (time.perf_counter() - t0) * 1000.0
    alpha = solve_alpha(args.k).alpha
    if args.trace and not args.json:
        print(f"alpha_{args.k} = {alpha:.12f}")
        for entry in trace:
            print("  depth {depth} u={u} {action} sizes={sizes}".format(**entry))
    extra = {"alpha": alpha}
    if args.trace:
        extra["trace"] = trace
    return _finish_girth(args, r, ms, extra)


def _cmd_spanner(args) -> int:
    g = read_graph(args.input)
    seed = _pick_seed(args)
    t0 = time.perf_counter()
    sp = build_roundtrip_spanner(g, eps=args.eps, seed=seed)
    ms = (time.perf_counter() - t0) * 1000.0
    counts = sp.provenance_counts()
    comments = [
        f"roundtrip spanner stretch {sp.declared_stretch:g} eps {sp.eps:g} seed {seed}",
        f"host n {g.n} m {g.m} kept {sp.edge_count}",
    ]
    for kind in sorted(counts):
        comments.append(f"edges {kind} {counts[kind]}")
    write_graph(sp.to_graph(), args.out, comments=comments)
    if args.json:
        _emit_json({
            "edges": sp.edge_count,
            "host_edges": g.m,
            "stretch": sp.declared_stretch,
            "eps": sp.eps,
            "seed": seed,
            "provenance": counts,
            "out": str(args.out),
            "elapsed_ms": round(ms, 3),
        })
    else:
        print(f"seed {seed}")
        print(f"kept {sp.edge_count} of {g.m} edges at stretch "
              f"{sp.declared_stretch:g}")
        for kind in sorted(counts):
            print(f"  {kind}: {counts[kind]}")
        print(f"wrote {args.out}")
        print(f"elapsed {ms:.1f} ms")
    return 0


def _cmd_verify_spanner(args) -> int:
    g = read_graph(args.input)
    h = read_graph(args.spanner)
    chk = verify_spanner(g, h, args.stretch, cap=args.cap)
    if args.json:
        payload = {
            "ok": chk.ok,
            "stretch": chk.stretch_bound,
            "worst_ratio": chk.worst_ratio,
        }
        if not chk.ok:
            payload["violation"] = {
                "u": chk.u, "v": chk.v,
                "rt_spanner": chk.rt_sub, "rt_host": chk.rt_host,
            }
        _emit_json(payload)
    else:
        if chk.ok:
            print(f"ok: worst ratio {chk.worst_ratio:.6f} "
                  f"<= stretch {chk.stretch_bound:g}")
        else:
            print(f"VIOLATION at pair ({chk.u}, {chk.v}): "
                  f"roundtrip {chk.rt_sub:g} in spanner vs {chk.rt_host:g} "
                  f"in host exceeds stretch {chk.stretch_bound:g}")
    return 0 if chk.ok else 4


def _cmd_reduce(args) -> int:
    g = read_graph(args.input)
    if g.weighted:
        rg = reduce_weighted(g)
    else:
        rg = reduce_unweighted(g, side=args.side)
    write_reduced(rg, args.out, args.map)
    if args.json:
        _emit_json({
            "kind": rg.kind,
            "n": g.n, "m": g.m,
            "reduced_n": rg.graph.n, "reduced_m": rg.graph.m,
            "scale": rg.scale,
            "out": str(args.out), "map": str(args.map),
        })
    else:
        print(f"{rg.kind} reduction: {g.n} vertices, {g.m} edges "
              f"-> {rg.graph.n} vertices, {rg.graph.m} edges, "
              f"distance scale {rg.scale}")
        print(f"wrote {args.out} and {args.map}")
    return 0


def _build_instance(family: str, args, seed: int) -> DirectedGraph:
    weights = args.weights
    mw = args.max_weight
    if family == "gnm":
        m = args.m if args.m is not None else 4 * args.n
        return directed_gnm(args.n, m, weights=weights, max_weight=mw,
                            seed=seed)
    if family == "cycle":
        return directed_cycle(args.n, weights=weights, max_weight=mw,
                              seed=seed)
    if family == "layered":
        return layered_cycle(args.n, args.k, weights=weights, max_weight=mw,
                             seed=seed)
    if family == "grid":
        return bidirected_grid(args.rows, args.cols, weights=weights,
                               max_weight=mw, seed=seed)
    if family == "hard":
        if weights != "unit":
            raise InvalidParametersError("the hard family is unweighted")
        return gap_instance(args.n, args.k, args.plant == "yes", seed=seed)
    raise InvalidParametersError(f"unknown family {family!r}")


def _cmd_gen(args) -> int:
    seed = _pick_seed(args)
    g = _build_instance(args.family, args, seed)
    params = {
        "gnm": lambda: f"n {args.n} m {args.m if args.m is not None else 4 * args.n}",
        "cycle": lambda: f"n {args.n}",
        "layered": lambda: f"n {args.n} k {args.k}",
        "grid": lambda: f"rows {args.rows} cols {args.cols}",
        "hard": lambda: f"n {args.n} k {args.k} plant {args.plant}",
    }[args.family]()
    write_graph(g, args.out, comments=[
        f"family {args.family} {params} weights {args.weights} seed {seed}",
    ])
    if args.json:
        _emit_json({
            "family": args.family, "n": g.n, "m": g.m,
            "weighted": g.weighted, "seed": seed, "out": str(args.out),
        })
    else:
        print(f"seed {seed}")
        print(f"wrote {args.family} instance with {g.n} vertices, "
              f"{g.m} edges to {args.out}")
    return 0


def _cmd_alpha(args) -> int:
    a = solve_alpha(args.k)
    if args.json:
        _emit_json({"k": a.k, "alpha": a.alpha, "residual": a.residual})
    else:
        print(f"alpha_{a.k} = {a.alpha:.15f}  (residual {a.residual:.3e})")
    return 0


def _bench_graph(family: str, n: int, args, seed: int) -> DirectedGraph:
    weights = args.weights
    mw = args.max_weight
    if family == "gnm":
        m = min(int(round(args.density * n)), n * (n - 1))
        return directed_gnm(n, m, weights=weights, max_weight=mw, seed=seed)
    if family == "cycle":
        return directed_cycle(n, weights=weights, max_weight=mw, seed=seed)
    if family == "layered":
        k = args.k
        size = max(2 * k, k * ((n + k - 1) // k))  # round up to a multiple of k
        return layered_cycle(size, k, weights=weights, max_weight=mw,
                             seed=seed)
    if family == "grid":
        side = max(2, int(round(math.sqrt(n))))
        return bidirected_grid(side, side, weights=weights, max_weight=mw,
                               seed=seed)
    if family == "hard":
        if weights != "unit":
            raise InvalidParametersError("the hard family is unweighted")
        return gap_instance(n, args.k, args.plant == "yes", seed=seed)
    raise InvalidParametersError(f"unknown family {family!r}")


def _bench_runner(args):
    algo = args.algo
    if algo == "exact":
        return lambda g, s: exact_girth(g)
    if algo == "approx2":
        return lambda g, s: girth_approx_unweighted(g, s, delta=args.delta)
    if algo == "approx2eps":
        return lambda g, s: girth_approx_weighted(g, eps=args.eps, seed=s)
    if algo == "approx2k":
        return lambda g, s: girth_approx_2k(g, args.k, eps=args.eps, seed=s)
    raise InvalidParametersError(f"unknown algorithm {algo!r}")


def _fmt_girth(value: float) -> str:
    return "inf" if math.isinf(value) else str(int(value))


def _cmd_bench(args) -> int:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    if not sizes:
        raise InvalidParametersError("need at least one size")
    if args.trials < 1:
        raise InvalidParametersError("need trials >= 1")
    seed = _pick_seed(args)
    run = _bench_runner(args)
    if args.algo == "approx2" and args.weights != "unit":
        raise InvalidParametersError("approx2 benchmarks need unit weights")

    lines = [f"# seed {seed}", "n,m,median_ms,estimate,oracle,ratio"]
    ns: list[int] = []
    times: list[float] = []
    rows: list[dict] = []
    for n in sizes:
        gseed = int(stream(seed, "bench", "graph", n).integers(2 ** 63))
        g = _bench_graph(args.family, n, args, gseed)
        if not args.no_oracle and g.n > ORACLE_CAP:
            raise CapExceededError(
                f"oracle girth at n={g.n} exceeds the cap {ORACLE_CAP}; "
                "rerun with --no-oracle")
        oracle = math.inf
        if not args.no_oracle:
            oracle = exact_girth(g).estimate
        elapsed: list[float] = []
        first = None
        for t in range(args.trials):
            aseed = int(stream(seed, "bench", "run", n, t).integers(2 ** 63))
            t0 = time.perf_counter()
            r = run(g, aseed)
            elapsed.append((time.perf_counter() - t0) * 1000.0)
            if first is None:
                first = r
        med = statistics.median(elapsed)
        if args.no_oracle:
            oracle_txt, ratio_txt = "", ""
            ratio = None
        else:
            oracle_txt = _fmt_girth(oracle)
            if math.isinf(first.estimate) and math.isinf(oracle):
                ratio = 1.0
            elif math.isinf(first.estimate) or math.isinf(oracle):
                ratio = math.inf
            else:
                ratio = first.estimate / oracle
            ratio_txt = "inf" if math.isinf(ratio) else f"{ratio:.4f}"
        lines.append(f"{g.n},{g.m},{med:.3f},{_fmt_girth(first.estimate)},"
                     f"{oracle_txt},{ratio_txt}")
        ns.append(g.n)
        times.append(med)
        rows.append({"n": g.n, "m": g.m, "median_ms": round(med, 3),
                     "estimate": None if math.isinf(first.estimate)
                     else int(first.estimate),
                     "oracle": None if (args.no_oracle or math.isinf(oracle))
                     else int(oracle),
                     "ratio": None if ratio is None or math.isinf(ratio)
                     else round(ratio, 4)})

    slope = None
    if len(ns) >= 2 and min(times) > 0 and len(set(ns)) >= 2:
        slope = float(np.polyfit(np.log(ns), np.log(times), 1)[0])
        lines.append(f"# slope {slope:.3f} (log-log fit of median_ms over "
                     f"{len(ns)} sizes; small runs are timer-noise bound, "
                     "treat as indicative)")
    else:
        lines.append("# slope unavailable (need >= 2 distinct sizes)")

    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"seed {seed}")
        print(f"wrote {args.out}")
    elif args.json:
        _emit_json({"seed": seed, "rows": rows, "slope": slope})
    else:
        sys.stdout.write(text)
    return 0


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit one JSON object instead of text")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="accepted for interface compatibility; "
                             "execution is single-process "
                             "(default: GIRTHKIT_THREADS or 1)")

    parser = argparse.ArgumentParser(
        prog="girthkit",
        description="Girth approximation and roundtrip spanners "
                    "for directed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("exact", _cmd_exact, "exact girth by full search")
    p.add_argument("--input", required=True, help="graph file")

    p = add("approx2", _cmd_approx2,
            "factor-2 girth estimate, unweighted graphs")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--delta", type=float, default=0.25,
                   help="source sampling exponent tradeoff (default 0.25)")

    p = add("approx2eps", _cmd_approx2eps,
            "factor 2+eps girth estimate, weighted graphs")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--strong-poly", action="store_true",
                   help="rescale weights first so the work is independent "
                        "of their magnitude")
    p.add_argument("--k", type=int, default=1,
                   help="recursion depth when combined with --strong-poly")

    p = add("approx2k", _cmd_approx2k,
            "factor about 2k girth estimate via recursive splitting")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--trace", action="store_true",
                   help="print the recursion exponent and per-level set sizes")

    p = add("spanner", _cmd_spanner, "build a roundtrip spanner")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--out", required=True, help="spanner graph file to write")

    p = add("verify-spanner", _cmd_verify_spanner,
            "check every roundtrip distance of a spanner against its host")
    p.add_argument("--input", required=True, help="host graph file")
    p.add_argument("--spanner", required=True, help="spanner graph file")
    p.add_argument("--stretch", type=float, required=True)
    p.add_argument("--cap", type=int, default=ORACLE_CAP,
                   help=f"largest n the exact check accepts (default {ORACLE_CAP})")

    p = add("reduce", _cmd_reduce,
            "rewrite a graph with gadget trees so every degree is small")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--map", required=True,
                   help="sidecar file mapping auxiliary vertices to edges")
    p.add_argument("--side", choices=("out", "in"), default="out",
                   help="which side to split for unweighted inputs")

    p = add("gen", _cmd_gen, "generate a benchmark instance")
    p.add_argument("family", choices=("gnm", "cycle", "layered", "grid", "hard"))
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--m", type=int, default=None,
                   help="edge count for gnm (default 4n)")
    p.add_argument("--k", type=int, default=4,
                   help="layer count for layered and hard families")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--cols", type=int, default=10)
    p.add_argument("--plant", choices=("yes", "no"), default="yes",
                   help="hard family: plant a short cycle or forbid one")
    p.add_argument("--weights", choices=("unit", "uniform"), default="unit")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)

    p = add("bench", _cmd_bench,
            "time an algorithm across sizes and emit CSV")
    p.add_argument("--family",
                   choices=("gnm", "cycle", "layered", "grid", "hard"),
                   default="gnm")
    p.add_argument("--sizes", required=True,
                   help="comma separated vertex counts, e.g. 100,200,400")
    p.add_argument("--algo",
                   choices=("exact", "approx2", "approx2eps", "approx2k"),
                   default="approx2eps")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--plant", choices=("yes", "no"), default="yes")
    p.add_argument("--density", type=float, default=4.0,
                   help="edges per vertex for gnm (default 4)")
    p.add_argument("--weights", choices=("unit", "uniform"), default="unit")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--no-oracle", action="store_true",
                   help="skip the exact girth column (required past the cap)")
    p.add_argument("--out", default=None, help="write the CSV here "
                   "instead of stdout")

    p = add("alpha", _cmd_alpha,
            "recursion exponent alpha_k of the splitting algorithm")
    p.add_argument("--k", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphInputError) as exc:
        print(f"girthkit: bad input: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"girthkit: {exc}", file=sys.stderr)
        return 3
    except (ContractViolationError, NotASubgraphError) as exc:
        print(f"girthkit: self-check failed: {exc}", file=sys.stderr)
        return 4
    except GirthkitError as exc:
        print(f"girthkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
