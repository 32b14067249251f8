"""Replay one algorithm over its named corpus and summarize colors against the bound.

Example:
    python3 scripts/run_corpus.py --alg bnd --d 1 2 3 --csv runs.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from oncolor import corpus
from oncolor.engine import OnlineInstance, replay
from oncolor.generators import order
from oncolor.verify import check_trace

CORPORA = {
    "ff": lambda d: corpus.arbitrary(),
    "a": lambda d: corpus.bipartite(),
    "bnd": corpus.high_girth,
    "bo": corpus.high_oddgirth,
    "bo-offline": corpus.high_oddgirth,
}


def bound_of(rep):
    for name in ("bound", "finish_bound"):
        try:
            chk = rep[name]
        except KeyError:
            continue
        if chk.bound is not None:
            return chk.bound + (chk.slack or 0)
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alg", choices=sorted(CORPORA), required=True)
    ap.add_argument("--d", type=int, nargs="*", default=[None])
    ap.add_argument("--random-orders", type=int, default=3)
    ap.add_argument("--csv", help="write one row per run here")
    args = ap.parse_args(argv)

    rows = []
    t0 = time.perf_counter()
    for d in args.d:
        params = {} if d is None else {"d": d}
        for spec in CORPORA[args.alg](d):
            m = corpus.measure(spec)
            for o in corpus.orders(args.random_orders):
                trace = replay(OnlineInstance(m.graph, order(m.graph, o)), args.alg, **params)
                rep = check_trace(trace, conforming=True)
                rows.append({"instance": spec.label, "order": f"{o.strategy}:{o.seed}", "d": d or "",
                             "n": m.graph.n, "colors": trace.colors_used, "limit": bound_of(rep),
                             "ok": rep.ok, "classes": sum(s.rule == "step3" for s in trace.steps)})

    print(f"{'d':>3} {'runs':>5} {'fail':>5} {'max colors':>10} {'max ratio':>9} {'classes':>8}")
    for d in args.d:
        sub = [r for r in rows if r["d"] == (d or "")]
        ratios = [r["colors"] / r["limit"] for r in sub if r["limit"]]
        print(f"{d or '-':>3} {len(sub):>5} {sum(not r['ok'] for r in sub):>5} "
              f"{max(r['colors'] for r in sub):>10} {max(ratios, default=float('nan')):>9.3f} "
              f"{sum(r['classes'] for r in sub):>8}")
    print(f"{len(rows)} runs in {time.perf_counter() - t0:.1f}s")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0 if all(r["ok"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
