"""Colors used as the radius d grows, at a fixed instance size.

For B_{n,d}, each d gets its own girth >= 4d+1 random instances; for BO_{n,d},
odd-core subdivisions with oddgirth >= 4d+1. The ``--k1`` / ``--r`` knobs
shrink the palettes so the witness-class steps are exercised; without them the
step-1 palette is large enough that sparse graphs never leave it.
"""

from __future__ import annotations

import argparse
import statistics

from oncolor import corpus
from oncolor.algorithms import bnd_palette, bo_classes, bo_width
from oncolor.engine import OnlineInstance, replay
from oncolor.generators import GenerationStall, GenSpec, OrderSpec, generate, order
from oncolor.graph import is_proper
from oncolor.verify import bound_bnd, bound_bo


def instances_bnd(n, d, seeds):
    for s in seeds:
        try:
            yield generate(GenSpec("random-girth-constrained", n, s, g_min=4 * d + 1, m=n + n // 10))
        except GenerationStall as exc:
            yield exc.graph


def instances_bo(n, d, seeds):
    t = corpus.odd_at_least((4 * d + 1) / 3)
    core_m = max(3, round(n / t))
    for s in seeds:
        yield generate(GenSpec("subdivision", core=f"gnm:{max(4, core_m * 2 // 3)}:{core_m}", t=t, seed=s))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alg", choices=("bnd", "bo"), default="bnd")
    ap.add_argument("--n", type=int, default=1500)
    ap.add_argument("--ds", type=int, nargs="+")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--orders", type=int, default=4, help="random orders per instance")
    ap.add_argument("--k1", type=int, help="override the B_{n,d} step-1 palette")
    ap.add_argument("--r", type=int, help="override the BO class count")
    args = ap.parse_args(argv)
    ds = args.ds or ([1, 2, 3, 4, 5] if args.alg == "bnd" else [2, 4, 8, 16])

    print(f"alg={args.alg} n~{args.n}")
    print(f"{'d':>3} {'palette':>9} {'bound':>8} {'mean':>6} {'max':>4} {'classes':>8} {'improper':>8}")
    for d in ds:
        gen = instances_bnd if args.alg == "bnd" else instances_bo
        params = {"d": d}
        if args.alg == "bnd" and args.k1:
            params["k1"] = args.k1
        if args.alg == "bo" and args.r:
            params["r"] = args.r
        used, classes, improper = [], 0, 0
        n_seen = []
        for g in gen(args.n, d, range(args.seeds)):
            n_seen.append(g.n)
            for k in range(args.orders):
                t = replay(OnlineInstance(g, order(g, OrderSpec("random", seed=k))), args.alg, **params)
                used.append(t.colors_used)
                classes += sum(s.rule == "step3" for s in t.steps)
                improper += not is_proper(g, t.colors)[0]
        n = round(statistics.mean(n_seen))
        if args.alg == "bnd":
            palette, bound = f"K1={params.get('k1') or bnd_palette(n, d)}", bound_bnd(n, d)
        else:
            palette, bound = f"r={params.get('r') or bo_classes(n, d)},B={bo_width(d)}", bound_bo(n, d)
        print(f"{d:>3} {palette:>9} {bound:>8.2f} {statistics.mean(used):>6.2f} {max(used):>4} "
              f"{classes:>8} {improper:>8}")


if __name__ == "__main__":
    main()
