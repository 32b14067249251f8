"""Color-count bounds, invariant checks over traces, and brute-force oracles."""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any

from .graph import Graph, bfs, bipartition, girth, is_bipartite, is_proper, oddgirth


# -- bounds -------------------------------------------------------------------------

def bound_bnd(n: int, d: int) -> float:
    if n < 1 or d < 1:
        raise ValueError("bound_bnd needs n >= 1, d >= 1")
    return (d + 1) * n ** (1 / (d + 1))


def bound_bo(n: int, d: int) -> float:
    if n < 1:
        raise ValueError("bound_bo needs n >= 1")
    if d < 2:
        raise ValueError("bound_bo needs d >= 2")
    return 4 * math.sqrt(n * math.log2(d) / d)


def bound_a(n: int) -> float:
    """2 log2 n, floored at 1 so a single vertex is within bound."""
    if n < 1:
        raise ValueError("bound_a needs n >= 1")
    return max(1.0, 2 * math.log2(n))


def bound_offline(n: int, d: int) -> float:
    return 2 * math.sqrt(2 * n / d)


def wsize_bnd(k1: int, d: int) -> int:
    """Witness-set floor for B_{n,d}: sum of C(K1, l) for l = 1..d."""
    return sum(math.comb(k1, l) for l in range(1, d + 1))


# Additive slack absorbing the ceilings on K1, r and B. One row per algorithm.
SLACK = {
    "bnd": lambda d, width: d + 3,
    "bo": lambda d, width: 2 * width + 2,
    "bo-offline": lambda d, width: 4,
    "a": lambda d, width: 0,
    "unknown-n": lambda d, width: 0,
}


# -- reports ----------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool | None  # None: not applicable
    measured: Any = None
    bound: Any = None
    slack: Any = None
    detail: str = ""
    advisory: bool = False  # reported, but never fails the report

    @property
    def status(self) -> str:
        if self.passed is False and self.advisory:
            return "warn"
        return {True: "pass", False: "FAIL", None: "n/a"}[self.passed]


@dataclass
class Report:
    alg: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if c.passed is False and not c.advisory]

    @property
    def warnings(self) -> list[str]:
        return [c.name for c in self.checks if c.passed is False and c.advisory]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name, passed, measured=None, bound=None, slack=None, detail="", advisory=False):
        self.checks.append(Check(name, passed, measured, bound, slack, detail, advisory))

    def to_json(self) -> str:
        return json.dumps({"alg": self.alg, "ok": self.ok,
                           "checks": [asdict(c) for c in self.checks]}, indent=1, default=str)

    def table(self) -> str:
        rows = [("check", "status", "measured", "bound", "slack", "detail")]
        for c in self.checks:
            rows.append((c.name, c.status, _fmt(c.measured), _fmt(c.bound), _fmt(c.slack), c.detail))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(r[i].ljust(widths[i]) for i in range(5)) + "  " + r[5] for r in rows]
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(line.rstrip() for line in lines)


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.3f}"
    return str(x)


# -- trace expansion ------------------------------------------------------------

class _Prefix:
    """Container view of the vertices revealed at or before a position."""
    __slots__ = ("pos", "limit")

    def __init__(self, pos, limit):
        self.pos = pos
        self.limit = limit

    def __contains__(self, u):
        return self.pos[u] <= self.limit


@dataclass
class TraceState:
    """Full algorithm state reconstructed from a trace's per-step deltas."""
    trace: Any
    pos: dict[int, int]
    colors: list[int | None]
    H: dict[int, set[int]]
    h_of: dict[int, int]
    W: dict[int, set[int]]       # class color -> witnesses
    founders: dict[int, int]     # class color -> founder vertex

    def prefix_distances(self, v: int, cap: int) -> dict[int, int]:
        g = self.trace.graph
        return bfs(g.neighbors, v, cap, _Prefix(self.pos, self.pos[v]))


def expand(trace) -> TraceState:
    pos = {v: i for i, v in enumerate(trace.order)}
    H: dict[int, set[int]] = defaultdict(set)
    h_of: dict[int, int] = {}
    W: dict[int, set[int]] = {}
    founders: dict[int, int] = {}
    for s in trace.steps:
        if "H" in s.info:
            H[int(s.info["H"])].add(s.v)
            h_of.setdefault(s.v, int(s.info["H"]))
        if s.rule == "step3":
            W[s.color] = set(s.info.get("W", ()))
            founders[s.color] = s.v
    return TraceState(trace, pos, trace.colors, dict(H), h_of, W, founders)


# -- checks -----------------------------------------------------------------------

def precondition(graph: Graph, alg: str, d: int | None) -> tuple[bool, str]:
    """Whether ``graph`` satisfies the structural assumption of ``alg``."""
    if alg == "bnd":
        g0 = girth(graph)
        return (g0 is None or g0 >= 4 * d + 1), f"girth={g0 or 'acyclic'} need>={4 * d + 1}"
    if alg in ("bo", "bo-offline"):
        go = oddgirth(graph)
        return (go is None or go >= 4 * d + 1), f"oddgirth={go or 'bipartite'} need>={4 * d + 1}"
    if alg == "a":
        ok = is_bipartite(graph)
        return ok, "bipartite" if ok else "not bipartite"
    return True, "none"


def check_trace(trace, conforming: bool | None = None) -> Report:
    """Evaluate properness, proof invariants, and bounds on a complete trace.

    ``conforming`` short-circuits the girth/oddgirth precondition test when
    the caller already knows the answer.
    """
    return check_state(expand(trace), conforming)


def check_state(st: TraceState, conforming: bool | None = None) -> Report:
    trace = st.trace
    alg = trace.alg
    p = trace.params
    d = p.get("d")
    rep = Report(alg + ("-robust" if p.get("robust") else "") + ("+unknown-n" if p.get("unknown_n") else ""))

    _check_consistency(st, rep)
    if any(c is None for c in st.colors):
        rep.add("proper", False, detail="uncolored vertex")
        return rep

    if conforming is None:
        conforming, why = precondition(trace.graph, alg, d)
    else:
        why = "given"
    robust = bool(p.get("robust"))
    if not conforming and not robust:
        rep.add("precondition", None, detail=why)
        ok, edge = is_proper(trace.graph, st.colors)
        rep.add("proper", None if not ok else True, detail="" if ok else f"edge {edge}")
        return rep
    rep.add("precondition", True if conforming else None, detail=why)

    ok, edge = is_proper(trace.graph, st.colors)
    rep.add("proper", ok, detail="" if ok else f"monochromatic edge {edge}")

    if robust:
        overflow = sum(1 for s in trace.steps if s.rule == "overflow")
        rep.add("overflow", True, measured=overflow)
        if not conforming:
            return rep
    if p.get("unknown_n"):
        _check_unknown_n(st, rep)
        return rep
    if alg == "a":
        _check_a(st, rep)
    elif alg == "bnd":
        _check_bnd(st, rep, overridden="k1" in p)
    elif alg == "bo":
        _check_bo(st, rep, overridden=("r" in p or "width" in p))
    elif alg == "bo-offline":
        _check_bo_offline(st, rep)
    return rep


def _check_consistency(st: TraceState, rep: Report) -> None:
    trace = st.trace
    seq = [s.v for s in trace.steps]
    ok = seq == list(trace.order) and all(s.color >= 1 for s in trace.steps)
    rep.add("trace_consistent", ok, measured=len(seq), bound=trace.graph.n,
            detail="" if ok else "steps do not match the reveal order")


def _bound_check(rep, name, measured, bound, slack, strict):
    ok = measured < bound + slack if strict else measured <= bound + slack
    rep.add(name, ok, measured=measured, bound=bound, slack=slack)


def _check_a(st: TraceState, rep: Report) -> None:
    from .graph import ParityUnionFind

    trace = st.trace
    g = trace.graph
    n = g.n
    _bound_check(rep, "bound", trace.colors_used, bound_a(n), SLACK["a"](None, None), strict=False)

    uf = ParityUnionFind()
    worst = None
    for s in trace.steps:
        uf.add(s.v)
        for u in g.adj[s.v]:
            if u in uf:
                uf.union(s.v, u)
        k = s.color
        if k < 2:
            continue
        root, _ = uf.find(s.v)
        need = 2 ** (k / 2 - 1)
        have = min(uf.count[root])
        if have < need and worst is None:
            worst = (s.v, k, have)
    rep.add("side_size", worst is None, detail="" if worst is None else f"v={worst[0]} k={worst[1]} side={worst[2]}")

    if n > 64:
        rep.add("side_size_local", None, detail="n > 64")
        return
    worst = None
    for s in trace.steps:
        k = s.color
        if k < 2:
            continue
        reach = st.prefix_distances(s.v, int(2 ** (k / 2)))
        sides = [1, 0]
        for dist in reach.values():
            sides[dist % 2] += 1
        if min(sides) < 2 ** (k / 2 - 1) and worst is None:
            worst = (s.v, k, sides)
    # The distance-bounded form is advisory: a vertex colored 3 can see only one
    # opposite-side vertex within distance 2 while the second sits at distance 3.
    rep.add("side_size_local", worst is None, advisory=True,
            detail="" if worst is None else f"v={worst[0]} k={worst[1]} sides={worst[2]}")


def _check_w_common(st: TraceState, rep: Report, parity: bool, d: int) -> None:
    trace = st.trace
    W = st.W
    rep.add("w_nonempty", all(W.values()), measured=min((len(w) for w in W.values()), default=None))

    owner: dict[int, int] = {}
    clash = None
    for c in sorted(W):
        for u in W[c]:
            if u in owner and clash is None:
                clash = (u, owner[u], c)
            owner.setdefault(u, c)
    rep.add("w_disjoint", clash is None, measured=len(W),
            detail="" if clash is None else f"vertex {clash[0]} in classes {clash[1]} and {clash[2]}")

    name = "trigger_parity" if parity else "conflict_geometry"
    bad = None
    for s in trace.steps:
        if s.rule != "step2":
            continue
        wit = W.get(s.color)
        dist = st.prefix_distances(s.v, d)
        hit = wit is not None and any(
            u in dist and (not parity or dist[u] % 2) for u in wit)
        if not hit:
            bad = s.v
            break
    rep.add(name, bad is None, detail="" if bad is None else f"step-2 vertex {bad} has no witness")


def _check_bnd(st: TraceState, rep: Report, overridden: bool) -> None:
    from .algorithms import bnd_palette

    trace = st.trace
    g = trace.graph
    n = max(g.n, 1)
    d = trace.params["d"]
    k1 = trace.params.get("k1") or bnd_palette(n, d)

    bad = next((s.v for s in trace.steps
                if (s.rule == "step1") != (s.color <= k1)), None)
    rep.add("step1_palette", bad is None, bound=k1, detail="" if bad is None else f"vertex {bad}")

    _check_w_common(st, rep, parity=False, d=d)

    bad = None
    for c, z in st.founders.items():
        seen = {st.colors[u] for u in g.adj[z] if st.pos[u] < st.pos[z]}
        if not set(range(1, k1 + 1)) <= seen:
            bad = z
            break
    rep.add("founder_saturation", bad is None, bound=k1,
            detail="" if bad is None else f"founder {bad} missing a step-1 color")

    floor = wsize_bnd(k1, d)
    smallest = min((len(w) for w in st.W.values()), default=None)
    rep.add("w_size", smallest is None or smallest >= floor, measured=smallest, bound=floor)
    classes = len(st.W)
    rep.add("class_range", classes * floor <= g.n, measured=classes, bound=g.n / floor)
    if overridden:
        rep.add("bound", None, detail="palette overridden")
    else:
        _bound_check(rep, "bound", trace.colors_used, bound_bnd(n, d), SLACK["bnd"](d, None), strict=True)


def _check_h(st: TraceState, rep: Report, r: int, block: int, cap: int | None) -> None:
    trace = st.trace
    g = trace.graph

    bad = None
    for s in trace.steps:
        i = s.info.get("H")
        if s.rule == "step1":
            if not (i is not None and 1 <= i <= r and (i - 1) * block < s.color <= i * block):
                bad = s.v
                break
        elif s.color <= r * block:
            bad = s.v
            break
    rep.add("block_discipline", bad is None, bound=block, detail="" if bad is None else f"vertex {bad}")

    owner: dict[int, int] = {}
    clash = None
    for i in sorted(st.H):
        for u in st.H[i]:
            if u in owner and clash is None:
                clash = (u, owner[u], i)
            owner.setdefault(u, i)
    rep.add("h_disjoint", clash is None, measured=len(st.H),
            detail="" if clash is None else f"vertex {clash[0]} in classes {clash[1]} and {clash[2]}")

    bad = None
    for i, members in st.H.items():
        seen: set[int] = set()
        for v in members:
            if v in seen:
                continue
            parts = bipartition(g, v, members)
            if parts is None:
                bad = i
                break
            seen |= parts[0] | parts[1]
        if bad is not None:
            break
    rep.add("h_bipartite", bad is None, detail="" if bad is None else f"class {bad}")

    worst = 0
    for i, members in st.H.items():
        ordered = sorted(members, key=st.pos.__getitem__)
        worst = max(worst, max(replay_a(g, ordered).values(), default=0))
    rep.add("a_cap", cap is None or worst <= cap, measured=worst, bound=cap)


def replay_a(g: Graph, ordered: list[int]) -> dict[int, float]:
    """Algorithm A on the subgraph induced by ``ordered``, revealed in that order.

    Components are merged small-into-large with explicit side labels, so each
    step costs amortized O(log n) relabels. A vertex that closes an odd cycle
    gets ``inf``, as does everything after it.
    """
    members = set(ordered)
    comp: dict[int, int] = {}
    side: dict[int, int] = {}
    verts: dict[int, list[int]] = {}
    palette: dict[int, tuple[set[int], set[int]]] = {}
    colors: dict[int, float] = {}
    broken = False
    for v in ordered:
        if broken:
            colors[v] = math.inf
            continue
        want: dict[int, int] = {}  # component -> side v must take in it
        for u in g.adj[v]:
            if u in members and u in colors:
                c, s = comp[u], 1 - side[u]
                if want.setdefault(c, s) != s:
                    broken = True
        if broken:
            colors[v] = math.inf
            continue
        if not want:
            base, s = v, 0
            verts[base] = []
            palette[base] = (set(), set())
        else:
            base = max(want, key=lambda c: len(verts[c]))
            s = want[base]
            for c, sc in want.items():
                if c == base:
                    continue
                flip = sc != s
                for x in verts.pop(c):
                    side[x] ^= flip
                    comp[x] = base
                    verts[base].append(x)
                    palette[base][side[x]].add(colors[x])
                del palette[c]
        far = palette[base][1 - s]
        k = 1
        while k in far:
            k += 1
        comp[v], side[v], colors[v] = base, s, k
        verts[base].append(v)
        palette[base][s].add(k)
    return colors


def _check_w_parity(st: TraceState, rep: Report, d: int) -> None:
    bad = None
    for c, z in st.founders.items():
        dist = st.prefix_distances(z, d)
        for u in st.W[c]:
            ok = (u in dist and dist[u] % 2 == 1 and u in st.h_of and st.pos[u] < st.pos[z])
            if not ok:
                bad = (z, u)
                break
        if bad:
            break
    rep.add("w_parity", bad is None, detail="" if bad is None else f"founder {bad[0]} witness {bad[1]}")


def _check_bo(st: TraceState, rep: Report, overridden: bool) -> None:
    from .algorithms import bo_classes, bo_width

    trace = st.trace
    g = trace.graph
    n = max(g.n, 1)
    d = trace.params["d"]
    r = trace.params.get("r") or bo_classes(n, d)
    width = trace.params.get("width") or bo_width(d)

    _check_h(st, rep, r, width, width)
    _check_w_common(st, rep, parity=True, d=d)
    _check_w_parity(st, rep, d)

    if overridden:
        for name in ("w_size", "class_range", "bound"):
            rep.add(name, None, detail="palette overridden")
        return
    floor = r * (d // 2)
    smallest = min((len(w) for w in st.W.values()), default=None)
    rep.add("w_size", smallest is None or smallest >= floor, measured=smallest, bound=floor)
    limit = math.ceil(2 * g.n / (r * d)) + 1
    rep.add("class_range", len(st.W) <= limit, measured=len(st.W), bound=limit)
    _bound_check(rep, "bound", trace.colors_used, bound_bo(n, d), SLACK["bo"](d, width), strict=False)


def _check_bo_offline(st: TraceState, rep: Report) -> None:
    from .algorithms import a_width, offline_bipartite_finish, offline_classes

    trace = st.trace
    g = trace.graph
    n = max(g.n, 1)
    d = trace.params["d"]
    r = trace.params.get("r") or offline_classes(n, d)
    block = trace.params.get("width") or a_width(n)

    _check_h(st, rep, r, block, None)
    _check_w_common(st, rep, parity=True, d=d)
    _check_w_parity(st, rep, d)

    smallest = min((len(w) for w in st.W.values()), default=None)
    rep.add("w_size", smallest is None or smallest >= r * d, measured=smallest, bound=r * d)
    finished = offline_bipartite_finish(trace)
    ok, edge = is_proper(g, finished)
    rep.add("finish_proper", ok, detail="" if ok else f"monochromatic edge {edge}")
    _bound_check(rep, "finish_bound", max(finished, default=0), bound_offline(n, d),
                 SLACK["bo-offline"](d, None), strict=False)


def _check_unknown_n(st: TraceState, rep: Report) -> None:
    from .algorithms import family_bound

    trace = st.trace
    by_phase: dict[int, list[int]] = defaultdict(list)
    for s in trace.steps:
        by_phase[s.info.get("phase", 0)].append(s.color)
    top, ok = 0, True
    for k in sorted(by_phase):
        if min(by_phase[k]) <= top:
            ok = False
        top = max(top, max(by_phase[k]))
    rep.add("phase_palettes", ok, measured=len(by_phase))
    f = family_bound(trace.alg, trace.params.get("d"))
    n = max(trace.graph.n, 1)
    _bound_check(rep, "bound", trace.colors_used, 4 * f(n), SLACK["unknown-n"](None, None), strict=False)


# -- oracles ----------------------------------------------------------------------

def oracle_cycles(g: Graph, max_len: int | None = None) -> tuple[int | None, int | None]:
    """Shortest cycle and shortest odd cycle by exhaustive simple-cycle enumeration."""
    if g.n > 10 and (max_len is None or max_len > 12):
        raise ValueError("oracle_cycles is limited to n <= 10 or max_len <= 12")
    limit = max_len if max_len is not None else g.n
    best = [None, None]

    def cap():
        return min(limit, best[1] - 1) if best[1] is not None else limit

    for s in range(g.n):
        path = [s]
        on_path = {s}

        def dfs(x):
            for y in g.adj[x]:
                if y == s and len(path) >= 3:
                    k = len(path)
                    if best[0] is None or k < best[0]:
                        best[0] = k
                    if k % 2 and (best[1] is None or k < best[1]):
                        best[1] = k
                elif y > s and y not in on_path and len(path) < cap():
                    path.append(y)
                    on_path.add(y)
                    dfs(y)
                    path.pop()
                    on_path.discard(y)

        dfs(s)
    return best[0], best[1]


def oracle_chromatic(g: Graph) -> int:
    """Exact chromatic number by exhaustive k-coloring search (n <= 12)."""
    if g.n > 12:
        raise ValueError("oracle_chromatic is limited to n <= 12")
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=lambda v: -len(g.adj[v]))

    def colorable(k):
        col = [0] * g.n

        def go(i, used):
            if i == g.n:
                return True
            v = order[i]
            banned = {col[u] for u in g.adj[v]}
            for c in range(1, min(used + 1, k) + 1):
                if c not in banned:
                    col[v] = c
                    if go(i + 1, max(used, c)):
                        return True
                    col[v] = 0
            return False

        return go(0, 0)

    k = 1
    while not colorable(k):
        k += 1
    return k
