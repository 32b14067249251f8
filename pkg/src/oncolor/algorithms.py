"""Online colorers.

Every colorer is built for a known vertex count ``n`` (except the phase
wrapper, which needs none) and exposes ``step(view, v) -> Move`` where
``view`` is the revealed prefix including ``v``. Colorers keep their own
record of the colors they handed out; the view carries structure only.
"""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Callable, Iterator

from .engine import Move, PrefixView
from .graph import ODD, ParityUnionFind, bipartition


class AssumptionViolated(Exception):
    """The revealed input breaks a structural assumption the colorer cannot work around."""


def least_missing(used) -> int:
    c = 1
    while c in used:
        c += 1
    return c


def lowest_clear_bit(mask: int) -> int:
    """Least c >= 1 whose bit is clear in ``mask``."""
    c = 1
    while mask >> c & 1:
        c += 1
    return c


def ceil_root_multiple(a: int, n: int, p: int) -> int:
    """ceil(a * n**(1/p)) computed exactly: least k with k**p >= a**p * n."""
    target = a ** p * n
    k = max(1, int(a * n ** (1.0 / p)))
    while k ** p < target:
        k += 1
    while k > 1 and (k - 1) ** p >= target:
        k -= 1
    return k


def bnd_palette(n: int, d: int) -> int:
    """Step-1 palette size ceil(d * n^(1/(d+1)))."""
    return ceil_root_multiple(d, n, d + 1)


def bo_width(d: int) -> int:
    """Per-class palette width ceil(2 log2 d)."""
    return math.ceil(2 * math.log2(d) - 1e-12)


def bo_classes(n: int, d: int) -> int:
    """Number of bipartite classes ceil((n / (d log2 d))^(1/2))."""
    if d & (d - 1) == 0:
        denom = d * (d.bit_length() - 1)
        r = math.isqrt(n // denom)
        while r * r * denom < n:
            r += 1
        return max(r, 1)
    return max(1, math.ceil(math.sqrt(n / (d * math.log2(d))) - 1e-12))


def offline_classes(n: int, d: int) -> int:
    """ceil((n / (2d))^(1/2)), the class count for the offline variant."""
    r = math.isqrt(n // (2 * d))
    while r * r * 2 * d < n:
        r += 1
    return max(r, 1)


def a_width(n: int) -> int:
    """Colors Algorithm A may need on n vertices: 2 log2 n, at least 1."""
    return max(1, math.ceil(2 * math.log2(n) - 1e-12)) if n > 1 else 1


# -- First Fit -------------------------------------------------------------------

def ff_step(view: PrefixView, v: int, colors: dict[int, int]) -> int:
    return least_missing({colors[u] for u in view.neighbors(v) if u in colors})


class FirstFit:
    def __init__(self, n: int):
        self.n = n
        self.colors: dict[int, int] = {}

    def ceiling(self) -> int:
        return max(self.n, 1)

    def step(self, view, v):
        c = ff_step(view, v, self.colors)
        self.colors[v] = c
        return Move(c, "ff")


# -- Algorithm A -------------------------------------------------------------------

def a_step(view, v: int, colors: dict[int, int], members=None, offset: int = 0) -> int | None:
    """Reference rule: least color not on the far side of v's component.

    The component is taken in the subgraph induced by ``members | {v}``
    (the whole view when ``members`` is None). Returns ``None`` if that
    component is not bipartite.
    """
    restrict = None if members is None else _WithExtra(members, v)
    parts = bipartition(view, v, restrict)
    if parts is None:
        return None
    _, far = parts
    return offset + least_missing({colors[u] for u in far if u in colors})


class _WithExtra:
    __slots__ = ("base", "extra")

    def __init__(self, base, extra):
        self.base = base
        self.extra = extra

    def __contains__(self, x):
        return x == self.extra or x in self.base


class _AInstance:
    """Incremental Algorithm A over one vertex set, via a parity union-find."""

    def __init__(self):
        self.uf = ParityUnionFind()
        self.colors: dict[int, int] = {}

    def __contains__(self, v):
        return v in self.uf

    def __len__(self):
        return len(self.colors)

    def propose(self, nbrs) -> int | None:
        """Color A would give a new vertex adjacent to ``nbrs`` (members only), or None
        if joining would close an odd cycle."""
        side_of: dict[int, int] = {}
        far = 0
        for u in nbrs:
            root, p = self.uf.find(u)
            want = p ^ 1
            if side_of.setdefault(root, want) != want:
                return None
            far |= self.uf.mask[root][p]
        return lowest_clear_bit(far)

    def commit(self, v, nbrs, color: int) -> None:
        self.uf.add(v, 1 << color)
        self.colors[v] = color
        for u in nbrs:
            self.uf.union(v, u)


class AlgorithmA:
    def __init__(self, n: int):
        self.n = n
        self.inst = _AInstance()

    @property
    def colors(self):
        return self.inst.colors

    def ceiling(self) -> int:
        return max(self.n, 1)

    def step(self, view, v):
        nbrs = [u for u in view.neighbors(v) if u in self.inst]
        c = self.inst.propose(nbrs)
        if c is None:
            raise AssumptionViolated(f"vertex {v} closes an odd cycle")
        self.inst.commit(v, nbrs, c)
        return Move(c, "a")


# -- B_{n,d} ---------------------------------------------------------------------

class Bnd:
    """First Fit on a palette of size K1, then witness classes of radius d."""

    def __init__(self, n: int, d: int, k1: int | None = None):
        if d < 1:
            raise ValueError("bnd requires d >= 1")
        if k1 is not None and k1 < 1:
            raise ValueError("k1 must be >= 1")
        self.n = n
        self.d = d
        self.K1 = k1 if k1 is not None else bnd_palette(max(n, 1), d)
        self.colors: dict[int, int] = {}
        self.W: list[set[int]] = []
        self.member_of: dict[int, list[int]] = defaultdict(list)

    def ceiling(self) -> int:
        return self.K1 + max(self.n, 1)

    def class_color(self, idx: int) -> int:
        return self.K1 + 1 + idx

    def step(self, view, v):
        near = {self.colors[u] for u in view.neighbors(v)}
        for i in range(1, self.K1 + 1):
            if i not in near:
                self.colors[v] = i
                return Move(i, "step1")
        ball = view.ball(v, self.d)
        hits = [j for u in ball for j in self.member_of.get(u, ())]
        if hits:
            c = self.class_color(min(hits))
            self.colors[v] = c
            return Move(c, "step2")
        idx = len(self.W)
        self.W.append(ball)
        for u in ball:
            self.member_of[u].append(idx)
        c = self.class_color(idx)
        self.colors[v] = c
        return Move(c, "step3", {"W": sorted(ball)})


# -- BO_{n,d} ----------------------------------------------------------------------

class BO:
    """Bipartite classes colored by Algorithm A, then odd-distance witness classes.

    With ``offline=True`` the step-1 test only asks for 2-colorability and
    the class count follows the offline choice of r; colors within a class
    are provisional until :func:`offline_bipartite_finish`.
    """

    def __init__(self, n: int, d: int, r: int | None = None, width: int | None = None,
                 offline: bool = False):
        if d < 2 and not offline:
            raise ValueError("bo requires d >= 2")
        if d < 1:
            raise ValueError("d must be >= 1")
        self.n = n
        self.d = d
        self.offline = offline
        n1 = max(n, 1)
        if offline:
            self.r = r if r is not None else offline_classes(n1, d)
            self.cap = None
            self.block = width if width is not None else a_width(n1)
        else:
            self.r = r if r is not None else bo_classes(n1, d)
            self.cap = width if width is not None else bo_width(d)
            self.block = self.cap
        if self.r < 1 or self.block < 1:
            raise ValueError("r and the palette width must be >= 1")
        self.H = [_AInstance() for _ in range(self.r)]
        self.h_of: dict[int, int] = {}
        self.colors: dict[int, int] = {}
        self.W: list[set[int]] = []
        self.member_of: dict[int, list[int]] = defaultdict(list)

    def ceiling(self) -> int:
        return self.r * self.block + max(self.n, 1)

    def class_color(self, idx: int) -> int:
        return self.r * self.block + 1 + idx

    def step(self, view, v):
        nbrs_in: dict[int, list[int]] = defaultdict(list)
        for u in view.neighbors(v):
            i = self.h_of.get(u)
            if i is not None:
                nbrs_in[i].append(u)
        for i in range(self.r):
            nb = nbrs_in.get(i, ())
            c = self.H[i].propose(nb)
            if c is None or (self.cap is not None and c > self.cap):
                continue
            if c > self.block:
                raise RuntimeError("Algorithm A exceeded its offline block width")
            self.H[i].commit(v, nb, c)
            self.h_of[v] = i
            color = i * self.block + c
            self.colors[v] = color
            return Move(color, "step1", {"H": i + 1})
        odd = view.ball(v, self.d, ODD)
        hits = [j for u in odd for j in self.member_of.get(u, ())]
        if hits:
            c = self.class_color(min(hits))
            self.colors[v] = c
            return Move(c, "step2")
        W = {u for u in odd if u in self.h_of}
        idx = len(self.W)
        self.W.append(W)
        for u in W:
            self.member_of[u].append(idx)
        c = self.class_color(idx)
        self.colors[v] = c
        return Move(c, "step3", {"W": sorted(W)})


def offline_bipartite_finish(trace) -> list[int]:
    """Recolor each bipartite class of an offline BO run with two colors.

    Class ``i`` gets colors ``2i-1, 2i``; the k-th witness class gets
    ``2r + k``. Within a class, every component puts its earliest-revealed
    vertex on the odd color.
    """
    if trace.alg != "bo-offline":
        raise ValueError("offline finish needs a bo-offline trace")
    g = trace.graph
    d = trace.params["d"]
    r = trace.params.get("r") or offline_classes(max(g.n, 1), d)
    pos = {v: i for i, v in enumerate(trace.order)}
    classes: dict[int, set[int]] = defaultdict(set)
    founders: list[int] = []
    class_of_color: dict[int, int] = {}
    for s in trace.steps:
        if s.rule == "step1":
            classes[s.info["H"]].add(s.v)
        elif s.rule == "step3":
            class_of_color[s.color] = len(founders)
            founders.append(s.v)
    out: list[int | None] = [None] * g.n
    for i, members in classes.items():
        for v in sorted(members, key=pos.__getitem__):
            if out[v] is not None:
                continue
            parts = bipartition(g, v, members)
            if parts is None:
                raise RuntimeError(f"bipartite class {i} contains an odd cycle")
            for u in parts[0]:
                out[u] = 2 * i - 1
            for u in parts[1]:
                out[u] = 2 * i
    for s in trace.steps:
        if s.rule in ("step2", "step3"):
            out[s.v] = 2 * r + 1 + class_of_color[s.color]
    return out


# -- wrappers --------------------------------------------------------------------

def phase_sizes(f: Callable[[int], float]) -> Iterator[int]:
    """1, then repeatedly the least m with f(m) >= 2 f(previous)."""
    size = 1
    while True:
        yield size
        target = 2 * f(size)
        hi = size + 1
        while f(hi) < target:
            hi *= 2
        lo = max(size + 1, hi // 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if f(mid) >= target:
                hi = mid
            else:
                lo = mid + 1
        size = lo


class UnknownN:
    """Run a fresh n-indexed colorer per phase, each on its own palette block.

    Phase k sees only its own vertices; its colors are shifted above every
    color used in earlier phases.
    """

    def __init__(self, factory: Callable[[int], object], f: Callable[[int], float]):
        if f(1) <= 0:
            raise ValueError("bound function must be positive at 1")
        self.factory = factory
        self.f = f
        self._sizes = phase_sizes(f)
        self.phase = 0
        self.size = 0
        self.seen = 0
        self.offset = 0
        self.top = 0
        self.inner = None
        self.sub = None
        self.members: set[int] = set()

    def ceiling_for(self, n: int) -> int:
        total, covered = 0, 0
        for size in phase_sizes(self.f):
            total += self.factory(size).ceiling()
            covered += size
            if covered >= n:
                return total

    def step(self, view, v):
        if self.inner is None or self.seen == self.size:
            self.phase += 1
            self.size = next(self._sizes)
            self.seen = 0
            self.offset = self.top
            self.inner = self.factory(self.size)
            self.sub = PrefixView()
            self.members = set()
        self.sub.reveal(v, [u for u in view.neighbors(v) if u in self.members])
        self.members.add(v)
        self.seen += 1
        mv = self.inner.step(self.sub, v)
        color = self.offset + mv.color
        self.top = max(self.top, color)
        return Move(color, mv.rule, {**mv.info, "phase": self.phase})


class Robust:
    """Guarantee a proper coloring whatever the input.

    The inner colorer's choice is kept unless it clashes with a revealed
    neighbor; then the vertex gets First Fit over an overflow palette that
    starts above every color the inner colorer can produce.
    """

    def __init__(self, inner, ceiling: int):
        self.inner = inner
        self.base = ceiling
        self.colors: dict[int, int] = {}
        self.overflows = 0

    def ceiling(self) -> int:
        return self.base + max(len(self.colors), 1)

    def step(self, view, v):
        try:
            mv = self.inner.step(view, v)
        except AssumptionViolated:
            mv = None
        taken = {self.colors[u] for u in view.neighbors(v)}
        if mv is not None and mv.color not in taken:
            self.colors[v] = mv.color
            return mv
        k = 1
        while self.base + k in taken:
            k += 1
        color = self.base + k
        self.colors[v] = color
        self.overflows += 1
        info = {"proposed": None if mv is None else mv.color,
                "inner_rule": None if mv is None else mv.rule}
        return Move(color, "overflow", info)


# -- registry ----------------------------------------------------------------------

ALGORITHMS = ("ff", "a", "bnd", "bo", "bo-offline")
ALIASES = {"bnd-robust": ("bnd", True), "bo-robust": ("bo", True)}


def normalize(alg: str, params: dict) -> tuple[str, dict]:
    """Resolve aliases such as ``bnd-robust`` into a base id plus ``robust=True``."""
    params = dict(params)
    if alg in ALIASES:
        alg, _ = ALIASES[alg]
        params["robust"] = True
    if alg not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {alg!r}")
    return alg, params


def family_bound(alg: str, d: int | None = None) -> Callable[[int], float]:
    """The color bound f(n) an n-indexed family is expected to honor."""
    from . import verify

    if alg == "ff":
        return lambda n: float(n)
    if alg == "a":
        return lambda n: max(1.0, verify.bound_a(n))
    if alg == "bnd":
        return lambda n: verify.bound_bnd(n, d)
    if alg == "bo":
        return lambda n: verify.bound_bo(n, d)
    raise ValueError(f"no unknown-n family for {alg!r}")


def _base(alg: str, n: int, d, k1, r, width):
    if alg == "ff":
        return FirstFit(n)
    if alg == "a":
        return AlgorithmA(n)
    if d is None:
        raise ValueError(f"{alg} requires d")
    if alg == "bnd":
        return Bnd(n, d, k1=k1)
    if alg == "bo":
        return BO(n, d, r=r, width=width)
    return BO(n, d, r=r, width=width, offline=True)


def make_colorer(alg: str, n: int, *, d: int | None = None, robust: bool = False,
                 unknown_n: bool = False, k1: int | None = None, r: int | None = None,
                 width: int | None = None):
    """Build a colorer by id. ``k1``, ``r`` and ``width`` override the computed
    palette sizes (stress testing only; the bounds assume the defaults)."""
    alg, extra = normalize(alg, {})
    robust = robust or extra.get("robust", False)
    if unknown_n:
        if alg == "bo-offline":
            raise ValueError("bo-offline has no unknown-n form")
        colorer = UnknownN(lambda size: _base(alg, size, d, k1, r, width), family_bound(alg, d))
        ceiling = colorer.ceiling_for(max(n, 1))
    else:
        colorer = _base(alg, n, d, k1, r, width)
        ceiling = colorer.ceiling()
    if robust:
        colorer = Robust(colorer, ceiling)
    return colorer
