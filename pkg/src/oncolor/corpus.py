"""Named instance corpora shared by the acceptance suite and the experiment scripts.

Each builder returns GenSpecs whose structural promise (bipartite, girth or
oddgirth floor) holds by construction; ``measure`` confirms it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .generators import GenSpec, OrderSpec, generate
from .graph import Graph, girth, oddgirth

STATIC_ORDERS = (OrderSpec("natural"), OrderSpec("bfs"), OrderSpec("dfs"), OrderSpec("degree-desc"))


def orders(random_count: int = 3, seed: int = 0) -> tuple[OrderSpec, ...]:
    return STATIC_ORDERS + tuple(OrderSpec("random", seed=seed + i) for i in range(random_count))


@dataclass(frozen=True)
class Measured:
    graph: Graph
    girth: int | None
    oddgirth: int | None


@lru_cache(maxsize=None)
def measure(spec: GenSpec) -> Measured:
    g = generate(spec)
    return Measured(g, girth(g), oddgirth(g))


def odd_at_least(x: float) -> int:
    t = math.ceil(x)
    return t if t % 2 else t + 1


def arbitrary(seeds=range(15)) -> list[GenSpec]:
    """Unstructured graphs for First Fit: dense and sparse random, trees, cycles, cliques."""
    out = []
    for s in seeds:
        out += [
            GenSpec("gnp", 40 + 10 * s, s, p=0.2),
            GenSpec("gnp", 300, s, p=0.01),
            GenSpec("tree", 200, s),
            GenSpec("random-girth-constrained", 150, s, g_min=4, m=300),
            GenSpec("subdivision", core=f"gnm:10:{20 + s}", t=1 + s % 3, seed=s),
        ]
    out += [GenSpec("cycle", n) for n in (3, 4, 5, 17, 100)]
    out += [GenSpec("tree", 64, shape="binomial"), GenSpec("tree", 30, shape="star")]
    return out


def bipartite(seeds=range(14)) -> list[GenSpec]:
    out = []
    for s in seeds:
        out += [
            GenSpec("random-bipartite", 64, s, p=0.06),
            GenSpec("random-bipartite", 256, s, p=0.012),
            GenSpec("random-bipartite", 1000, s, p=0.002),
            GenSpec("tree", 128, s),
            GenSpec("subdivision", core=f"gnm:10:{18 + s}", t=2, seed=s),
        ]
    out += [GenSpec("cycle", 2 * k) for k in (2, 5, 16, 500)]
    out += [GenSpec("complete-bipartite", 20, split=s) for s in (1, 7, 10)]
    out += [GenSpec("tree", 256, shape="binomial"), GenSpec("path", 2000)]
    return out


def high_girth(d: int, seeds=range(5)) -> list[GenSpec]:
    """Girth at least 4d+1."""
    g_min = 4 * d + 1
    out = []
    for s in seeds:
        out += [
            GenSpec("random-girth-constrained", 60, s, g_min=g_min, m=60),
            GenSpec("random-girth-constrained", 400, s, g_min=g_min, m=460),
            GenSpec("random-girth-constrained", 1500, s, g_min=g_min, m=1700),
            GenSpec("subdivision", core=f"gnm:12:{24 + s}", t=math.ceil(g_min / 3), seed=s),
            GenSpec("tree", 300, s),
        ]
    out += [GenSpec("cycle", n) for n in (g_min, g_min + 1, 2000)]
    out.append(GenSpec("subdivision", core="petersen", t=math.ceil(g_min / 5)))
    # the one desk-scale input where the default palette saturates (d = 1, natural order)
    out.append(GenSpec("tree", 16, shape="binomial"))
    return out


def high_oddgirth(d: int, seeds=range(5)) -> list[GenSpec]:
    """Oddgirth at least 4d+1 (bipartite graphs count, their oddgirth is infinite)."""
    need = 4 * d + 1
    out = []
    for s in seeds:
        out += [
            GenSpec("subdivision", core=f"gnm:14:{28 + s}", t=odd_at_least(need / 3), seed=s),
            GenSpec("subdivision", core=f"gnm:40:{80 + s}", t=odd_at_least(need / 3), seed=s),
            GenSpec("subdivision", core=f"grc:60:{75 + s}:5", t=odd_at_least(need / 5), seed=s),
            GenSpec("random-girth-constrained", 500, s, g_min=need, m=500 + 16 // d),
            GenSpec("random-bipartite", 200, s, p=0.015),
        ]
    out += [GenSpec("cycle", n) for n in (need, need + 2, 1001)]
    out.append(GenSpec("subdivision", core="petersen", t=odd_at_least(need / 5)))
    return out


def random_graphs(seeds=range(20)) -> list[GenSpec]:
    """Arbitrary inputs for robust mode, triangles included."""
    out = [GenSpec("cycle", 3), GenSpec("cycle", 5)]
    for s in seeds:
        out += [GenSpec("gnp", 30 + 5 * s, s, p=0.15), GenSpec("gnp", 200, s, p=0.02)]
    return out
