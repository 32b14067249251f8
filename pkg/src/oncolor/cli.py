"""Command line: gen, order, run, sweep, check.

Exit codes: 0 pass, 1 check failure, 2 parse error, 3 precondition violated.
"""

from __future__ import annotations

import argparse
import os
import sys

from .algorithms import ALGORITHMS, ALIASES, normalize, offline_bipartite_finish
from .engine import OnlineInstance, TraceFormatError, replay, trace_from_json, trace_to_json
from .generators import FAMILIES, STRATEGIES, GenerationStall, GenSpec, OrderSpec, generate, order
from .graph import EdgeListError, check_order, format_edgelist, read_edgelist
from .sweep import failed, load_spec, rows_to_csv, run_sweep
from .verify import check_trace, precondition

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


def default_seed() -> int:
    return int(os.environ.get("ONCOLOR_SEED", "0"))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    spec = GenSpec(args.family, n=args.n or 0, seed=args.seed, p=args.p, g_min=args.girth,
                   m=args.m, t=args.t, core=args.core, shape=args.shape, split=args.split)
    try:
        g = generate(spec)
    except GenerationStall as exc:
        print(f"gen: {exc}; writing partial graph", file=sys.stderr)
        _emit(format_edgelist(exc.graph), args.out)
        return EXIT_FAIL
    _emit(format_edgelist(g), args.out)
    return EXIT_OK


def _alg_params(args) -> dict:
    params = {"d": args.d}
    if getattr(args, "robust", False):
        params["robust"] = True
    if getattr(args, "unknown_n", False):
        params["unknown_n"] = True
    for key in ("k1", "r", "width"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    return {k: v for k, v in params.items() if v is not None}


def _read_order(path, n):
    with open(path) as fh:
        fields = fh.read().split()
    try:
        return check_order([int(x) for x in fields], n)
    except ValueError as exc:
        raise EdgeListError(f"bad order file: {exc}") from None


def cmd_order(args) -> int:
    g = read_edgelist(args.graph)
    spec = OrderSpec(args.strategy, seed=args.seed, restarts=args.restarts)
    params = _alg_params(args) if args.alg else {}
    perm = order(g, spec, args.alg, **params)
    _emit(" ".join(map(str, perm)) + "\n", args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    g = read_edgelist(args.graph)
    if args.order_file:
        perm = _read_order(args.order_file, g.n)
    else:
        params = _alg_params(args)
        perm = order(g, OrderSpec(args.strategy, seed=args.seed, restarts=args.restarts),
                     args.alg, **params)
    alg, params = normalize(args.alg, _alg_params(args))
    if alg in ("bnd", "bo", "bo-offline") and "d" not in params:
        print(f"run: {alg} requires --d", file=sys.stderr)
        return EXIT_PARSE
    conforming, why = precondition(g, alg, params.get("d"))
    if not conforming and not params.get("robust"):
        print(f"run: precondition violated for {alg}: {why} (use --robust)", file=sys.stderr)
        return EXIT_PRECONDITION
    trace = replay(OnlineInstance(g, perm), alg, **params)
    rep = check_trace(trace, conforming=conforming)
    colors = trace.colors_used
    bound = None
    for name in ("bound", "finish_bound"):
        try:
            bound = rep[name].bound
        except KeyError:
            pass
    if alg == "bo-offline":
        colors = max(offline_bipartite_finish(trace), default=0)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(trace_to_json(trace))
    btxt = "-" if bound is None else f"{bound:.3f}"
    print(f"alg={args.alg} n={g.n} colors={colors} bound={btxt} ok={str(rep.ok).lower()}")
    if args.verbose:
        print(rep.table())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    spec = load_spec(args.spec)
    if args.jobs:
        spec.jobs = args.jobs
    rows = run_sweep(spec)
    _emit(rows_to_csv(rows), args.out)
    return EXIT_FAIL if failed(rows) else EXIT_OK


def cmd_check(args) -> int:
    with open(args.trace) as fh:
        trace = trace_from_json(fh.read())
    rep = check_trace(trace)
    print(rep.to_json() if args.json else rep.table())
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oncolor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance as an edge list")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--p", type=float)
    p.add_argument("--girth", type=int, help="girth floor for random-girth-constrained")
    p.add_argument("--m", type=int, help="target edge count")
    p.add_argument("--t", type=int, help="edges per subdivided path")
    p.add_argument("--core", help="subdivision core: c5, k4, petersen, gnm:N:M, grc:N:M:G")
    p.add_argument("--shape", default="random", choices=("random", "binomial", "star"))
    p.add_argument("--split", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    def alg_flags(p, required):
        p.add_argument("--alg", choices=ALGORITHMS + tuple(ALIASES), required=required)
        p.add_argument("--d", type=int)
        p.add_argument("--robust", action="store_true")
        p.add_argument("--unknown-n", dest="unknown_n", action="store_true")
        p.add_argument("--k1", type=int, help=argparse.SUPPRESS)
        p.add_argument("--r", type=int, help=argparse.SUPPRESS)
        p.add_argument("--width", type=int, help=argparse.SUPPRESS)

    def order_flags(p):
        p.add_argument("--strategy", choices=STRATEGIES, default="natural")
        p.add_argument("--seed", type=int, default=default_seed())
        p.add_argument("--restarts", type=int, default=20)

    p = sub.add_parser("order", help="emit a vertex order")
    p.add_argument("graph")
    order_flags(p)
    alg_flags(p, required=False)
    p.add_argument("--out")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("run", help="replay an algorithm and verify the result")
    p.add_argument("graph")
    p.add_argument("--order-file")
    order_flags(p)
    alg_flags(p, required=True)
    p.add_argument("--trace", help="write the full trace JSON here")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run a JSON grid spec and emit CSV")
    p.add_argument("spec")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="verify a saved trace")
    p.add_argument("trace")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EdgeListError, TraceFormatError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError, KeyError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
