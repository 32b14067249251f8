"""Instance families with girth/oddgirth control, and vertex orders."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, bfs

FAMILIES = ("cycle", "path", "tree", "complete-bipartite", "random-bipartite",
            "random-girth-constrained", "subdivision", "gnp")
STRATEGIES = ("natural", "random", "bfs", "dfs", "degree-desc", "adversarial-search")


class GenerationStall(RuntimeError):
    """Constrained generation gave up before reaching its edge target."""

    def __init__(self, graph: Graph, target: int):
        super().__init__(f"stalled at {graph.m} of {target} edges")
        self.graph = graph
        self.target = target


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int = 0
    seed: int = 0
    p: float | None = None       # edge probability (gnp, random-bipartite)
    g_min: int | None = None     # girth floor (random-girth-constrained)
    m: int | None = None         # target edge count (random-girth-constrained)
    t: int | None = None         # edges per subdivided path
    core: str | None = None      # subdivision core: c<k>, k<k>, petersen, gnm:<n>:<m>, grc:<n>:<m>:<g>
    shape: str = "random"        # tree shape: random | binomial | star
    split: int | None = None     # left side size for bipartite families

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family != "subdivision" and self.n < 1:
            raise ValueError("n must be >= 1")
        if self.g_min is not None and self.g_min < 3:
            raise ValueError("g_min must be >= 3")
        if self.t is not None and self.t < 1:
            raise ValueError("t must be >= 1")

    @property
    def label(self) -> str:
        parts = [self.family]
        for key in ("n", "p", "g_min", "m", "t", "core", "split"):
            val = getattr(self, key)
            if val is not None and not (key == "n" and self.family == "subdivision"):
                parts.append(f"{key}={val}")
        if self.family == "tree":
            parts.append(f"shape={self.shape}")
        return ",".join(parts)


@dataclass(frozen=True)
class OrderSpec:
    strategy: str = "natural"
    seed: int = 0
    restarts: int = 1

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown order strategy {self.strategy!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def subdivide(g: Graph, t: int) -> Graph:
    """Replace every edge by a path with ``t`` edges (t - 1 new vertices)."""
    edges = []
    nxt = g.n
    for u, v in g.edges():
        prev = u
        for _ in range(t - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph.from_edges(nxt, edges)


def _core(name: str, rng: random.Random) -> Graph:
    if name == "petersen":
        return petersen()
    if name[0] == "c" and name[1:].isdigit():
        return cycle(int(name[1:]))
    if name[0] == "k" and name[1:].isdigit():
        return complete(int(name[1:]))
    head, *args = name.split(":")
    if head == "gnm" and len(args) == 2:
        n, m = int(args[0]), int(args[1])
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        return Graph.from_edges(n, rng.sample(pairs, m))
    if head == "grc" and len(args) == 3:
        return _girth_constrained(int(args[0]), int(args[1]), int(args[2]), rng)
    raise ValueError(f"unknown core {name!r}")


def _tree(n: int, shape: str, rng: random.Random) -> Graph:
    if shape == "star":
        return Graph.from_edges(n, [(0, v) for v in range(1, n)])
    if shape == "binomial":
        if n & (n - 1):
            raise ValueError("binomial trees need n a power of two")
        # post-order ids: the natural order forces First Fit to its worst case
        edges: list[tuple[int, int]] = []

        def build(k, base):
            # B_k occupies ids base .. base + 2**k - 1, root last
            root = base + 2 ** k - 1
            start = base
            for j in range(k):
                child_root = build(j, start)
                edges.append((child_root, root))
                start += 2 ** j
            return root

        build(n.bit_length() - 1, 0)
        return Graph.from_edges(n, edges)
    if shape != "random":
        raise ValueError(f"unknown tree shape {shape!r}")
    labels = list(range(n))
    rng.shuffle(labels)
    return Graph.from_edges(n, [(labels[v], labels[rng.randrange(v)]) for v in range(1, n)])


def _girth_constrained(n: int, m: int, g_min: int, rng: random.Random,
                       allow_partial: bool = False) -> Graph:
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    misses = 0
    stall = 50 * n
    while len(edges) < m and misses < stall:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or v in adj[u]:
            misses += 1
            continue
        # a new edge closes cycles of length dist(u, v) + 1
        if v in bfs(adj.__getitem__, u, g_min - 2):
            misses += 1
            continue
        adj[u].add(v)
        adj[v].add(u)
        edges.append((u, v))
        misses = 0
    g = Graph.from_edges(n, edges)
    if len(edges) < m and not allow_partial:
        raise GenerationStall(g, m)
    return g


def generate(spec: GenSpec) -> Graph:
    """Build the instance described by ``spec``; deterministic in ``spec.seed``."""
    rng = random.Random(spec.seed)
    n = spec.n
    fam = spec.family
    if fam == "cycle":
        return cycle(n)
    if fam == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if fam == "tree":
        return _tree(n, spec.shape, rng)
    if fam == "complete-bipartite":
        a = spec.split if spec.split is not None else n // 2
        return Graph.from_edges(n, [(u, v) for u in range(a) for v in range(a, n)])
    if fam == "random-bipartite":
        a = spec.split if spec.split is not None else n // 2
        p = 0.1 if spec.p is None else spec.p
        return Graph.from_edges(n, [(u, v) for u in range(a) for v in range(a, n) if rng.random() < p])
    if fam == "gnp":
        p = 0.1 if spec.p is None else spec.p
        return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
    if fam == "random-girth-constrained":
        g_min = spec.g_min if spec.g_min is not None else 5
        m = spec.m if spec.m is not None else n
        return _girth_constrained(n, m, g_min, rng)
    if fam == "subdivision":
        core = _core(spec.core or "c5", rng)
        return subdivide(core, spec.t if spec.t is not None else 1)
    raise AssertionError(fam)


# -- orders ------------------------------------------------------------------------

def _traversal(g: Graph, depth_first: bool) -> list[int]:
    seen = [False] * g.n
    out: list[int] = []
    for s in range(g.n):
        if seen[s]:
            continue
        if depth_first:
            stack = [s]
            while stack:
                x = stack.pop()
                if seen[x]:
                    continue
                seen[x] = True
                out.append(x)
                stack.extend(y for y in reversed(g.adj[x]) if not seen[y])
        else:
            seen[s] = True
            queue = [s]
            for x in queue:
                out.append(x)
                for y in g.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
    return out


def random_order(n: int, rng: random.Random) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def adversarial_search(g: Graph, alg: str, restarts: int, seed: int = 0, **params):
    """Replay ``alg`` on ``restarts`` random orders.

    Returns ``(worst order, its color count, every color count seen)``;
    ties keep the earliest order.
    """
    from .engine import OnlineInstance, replay

    rng = random.Random(seed)
    best, best_k, seen = None, -1, []
    for _ in range(restarts):
        perm = random_order(g.n, rng)
        k = replay(OnlineInstance(g, tuple(perm)), alg, **params).colors_used
        seen.append(k)
        if k > best_k:
            best, best_k = perm, k
    return tuple(best), best_k, seen


def order(g: Graph, spec: OrderSpec, alg: str | None = None, **params) -> tuple[int, ...]:
    """A vertex order for ``g``; ``alg`` (plus its params) drives adversarial search."""
    s = spec.strategy
    if s == "natural":
        return tuple(range(g.n))
    if s == "random":
        return tuple(random_order(g.n, random.Random(spec.seed)))
    if s == "bfs":
        return tuple(_traversal(g, depth_first=False))
    if s == "dfs":
        return tuple(_traversal(g, depth_first=True))
    if s == "degree-desc":
        return tuple(sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v)))
    if alg is None:
        raise ValueError("adversarial-search needs an algorithm")
    return adversarial_search(g, alg, spec.restarts, spec.seed, **params)[0]
