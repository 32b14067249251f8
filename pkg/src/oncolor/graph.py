"""Static undirected graphs: distances, girth/oddgirth, bipartitions, coloring checks.

Vertices are the dense integers ``0..n-1``. Functions that only walk
adjacency (``bipartition``, ``n_d``) accept anything exposing
``neighbors(v)``, so they work on a revealed prefix view as well as on a
full :class:`Graph`.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Container, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

ALL = "all"
ODD = "odd"


class EdgeListError(ValueError):
    """Malformed edge-list text."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adj):
            prev = -1
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if u <= prev:
                    raise ValueError(f"adjacency of {v} not strictly sorted")
                prev = u
        sets = [set(a) for a in self.adj]
        if any(v not in sets[u] for v in range(self.n) for u in self.adj[v]):
            raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))


# -- edge-list text format ---------------------------------------------------

def parse_edgelist(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise EdgeListError("empty edge list")
    lineno, head = rows[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise EdgeListError(f"line {lineno}: expected 'n m'") from None
    if len(rows) - 1 != m:
        raise EdgeListError(f"header declares {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, fields in rows[1:]:
        try:
            u, v = (int(x) for x in fields)
        except ValueError:
            raise EdgeListError(f"line {lineno}: expected 'u v'") from None
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise EdgeListError(str(exc)) from None


def format_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edgelist(path) -> Graph:
    with open(path) as fh:
        return parse_edgelist(fh.read())


# -- distances ---------------------------------------------------------------

def bfs(neighbors: Callable[[int], Iterable[int]], src: int, cap: int | None = None,
        allowed: Container[int] | None = None) -> dict[int, int]:
    """Distances from ``src`` (excluded) up to ``cap``, walking only through ``allowed``."""
    dist = {src: 0}
    frontier = [src]
    depth = 0
    while frontier and (cap is None or depth < cap):
        depth += 1
        nxt = []
        for x in frontier:
            for y in neighbors(x):
                if y not in dist and (allowed is None or y in allowed):
                    dist[y] = depth
                    nxt.append(y)
        frontier = nxt
    del dist[src]
    return dist


def bfs_distances(g: Graph, src: int, cap: int | None = None,
                  restrict: Container[int] | None = None) -> dict[int, int]:
    """Shortest-path distances from ``src`` to every vertex within ``cap`` hops.

    With ``restrict`` the search runs in the subgraph induced by
    ``restrict | {src}``. ``src`` itself is not in the result.
    """
    if not 0 <= src < g.n:
        raise IndexError(f"source {src} out of range for n={g.n}")
    return bfs(g.neighbors, src, cap, restrict)


def n_d(g, s: Iterable[int], d: int, parity: str = ALL,
        restrict: Container[int] | None = None) -> set[int]:
    """Vertices at positive distance <= d (odd distance when ``parity='odd'``) from some
    member of ``s``, minus ``s`` itself.

    ``g`` may be a :class:`Graph` or any object with ``neighbors``.
    """
    s = set(s)
    if d < 1:
        raise ValueError("d must be >= 1")
    if not s:
        raise ValueError("s must be nonempty")
    if parity not in (ALL, ODD):
        raise ValueError(f"unknown parity {parity!r}")
    out: set[int] = set()
    for v in s:
        if isinstance(g, Graph) and not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
        for u, k in bfs(g.neighbors, v, d, restrict).items():
            if parity == ALL or k % 2:
                out.add(u)
    return out - s


# -- cycles ------------------------------------------------------------------

def two_core(g: Graph) -> list[bool]:
    """Membership mask of the 2-core; every cycle lives inside it."""
    deg = [len(a) for a in g.adj]
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < 2]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u in g.adj[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] < 2:
                    stack.append(u)
    return alive


def girth(g: Graph) -> int | None:
    """Length of the shortest cycle, or ``None`` for a forest."""
    core = two_core(g)
    best = None
    for root in range(g.n):
        if not core[root]:
            continue
        dist = {root: 0}
        parent = {root: -1}
        q = deque([root])
        while q:
            x = q.popleft()
            dx = dist[x]
            if best is not None and 2 * dx >= best:
                break
            for y in g.adj[x]:
                if not core[y]:
                    continue
                if y not in dist:
                    dist[y] = dx + 1
                    parent[y] = x
                    q.append(y)
                elif y != parent[x]:
                    c = dx + dist[y] + 1
                    if best is None or c < best:
                        best = c
    return best


def oddgirth(g: Graph) -> int | None:
    """Length of the shortest odd cycle, or ``None`` when ``g`` is bipartite."""
    if is_bipartite(g):
        return None
    core = two_core(g)
    best = None
    for root in range(g.n):
        if not core[root]:
            continue
        dist = {root: 0}
        q = deque([root])
        while q:
            x = q.popleft()
            dx = dist[x]
            if best is not None and 2 * dx + 1 >= best:
                break
            for y in g.adj[x]:
                if not core[y]:
                    continue
                if y not in dist:
                    dist[y] = dx + 1
                    q.append(y)
                elif dist[y] == dx:
                    best = 2 * dx + 1
    return best


# -- bipartitions --------------------------------------------------------------

def bipartition(g, v: int, restrict: Container[int] | None = None
                ) -> tuple[set[int], set[int]] | None:
    """Two-color the component of ``v`` in the subgraph induced by ``restrict``.

    Returns ``(side_a, side_b)`` with ``v`` in ``side_a``, or ``None`` when the
    component contains an odd cycle.
    """
    side = {v: 0}
    q = deque([v])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if restrict is not None and y not in restrict:
                continue
            if y not in side:
                side[y] = side[x] ^ 1
                q.append(y)
            elif side[y] == side[x]:
                return None
    a = {x for x, s in side.items() if s == 0}
    return a, set(side) - a


def is_bipartite(g: Graph) -> bool:
    seen: set[int] = set()
    for v in range(g.n):
        if v in seen:
            continue
        parts = bipartition(g, v)
        if parts is None:
            return False
        seen |= parts[0] | parts[1]
    return True


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for v in range(g.n):
        if seen[v]:
            continue
        seen[v] = True
        comp = [v]
        for x in comp:
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        out.append(comp)
    return out


class ParityUnionFind:
    """Union-find that tracks, per component, each vertex's side of a 2-coloring.

    Each root carries a per-side vertex count and a per-side bitmask
    (bit ``c`` set when some vertex on that side carries label ``c``).
    """

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.parity: dict[int, int] = {}
        self.count: dict[int, list[int]] = {}
        self.mask: dict[int, list[int]] = {}

    def __contains__(self, x):
        return x in self.parent

    def add(self, x: int, mask: int = 0) -> None:
        self.parent[x] = x
        self.parity[x] = 0
        self.count[x] = [1, 0]
        self.mask[x] = [mask, 0]

    def find(self, x: int) -> tuple[int, int]:
        """Return ``(root, side of x relative to root)``."""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a: int, b: int) -> bool:
        """Record that ``a`` and ``b`` lie on opposite sides; False on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return pa != pb
        if self.count[ra][0] + self.count[ra][1] < self.count[rb][0] + self.count[rb][1]:
            ra, rb, pa, pb = rb, ra, pb, pa
        flip = pa ^ pb ^ 1
        self.parent[rb] = ra
        self.parity[rb] = flip
        cb, mb = self.count.pop(rb), self.mask.pop(rb)
        for s in (0, 1):
            self.count[ra][s ^ flip] += cb[s]
            self.mask[ra][s ^ flip] |= mb[s]
        return True


# -- colorings -----------------------------------------------------------------

def is_proper(g: Graph, colors: Sequence[int | None]) -> tuple[bool, tuple[int, int] | None]:
    """Check that no edge is monochromatic; return ``(ok, first bad edge)``."""
    if len(colors) != g.n:
        raise ValueError("coloring length does not match graph")
    missing = [v for v, c in enumerate(colors) if c is None]
    if missing:
        raise ValueError(f"vertex {missing[0]} is uncolored")
    for u, v in g.edges():
        if colors[u] == colors[v]:
            return False, (u, v)
    return True, None


def check_order(order: Sequence[int], n: int) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of 0..n-1")
    return order
