"""Online replay: reveal vertices one at a time and record what the colorer did."""

from __future__ import annotations

import json
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

from .graph import ALL, ODD, Graph, bfs, check_order


class PrefixView:
    """The subgraph induced by the vertices revealed so far.

    The view stores only revealed vertices and the edges among them, so a
    colorer holding it cannot look ahead. The engine (and wrappers that run
    a colorer on a sub-stream) extend it with :meth:`reveal`.
    """

    def __init__(self):
        self._adj: dict[int, list[int]] = {}
        self._order: list[int] = []

    def reveal(self, v: int, nbrs: Sequence[int]) -> None:
        if v in self._adj:
            raise ValueError(f"vertex {v} revealed twice")
        for u in nbrs:
            if u not in self._adj:
                raise ValueError(f"neighbor {u} of {v} has not been revealed")
        self._adj[v] = list(nbrs)
        for u in nbrs:
            self._adj[u].append(v)
        self._order.append(v)

    def __len__(self):
        return len(self._order)

    def __contains__(self, v):
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._order)

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(self._order)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self._adj[v])

    def edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, nbrs in self._adj.items() for v in nbrs}

    def distances(self, src: int, cap: int | None = None) -> dict[int, int]:
        return bfs(self._adj.__getitem__, src, cap)

    def ball(self, src: int, d: int, parity: str = ALL) -> set[int]:
        """Revealed vertices at positive distance <= d from ``src``."""
        dist = self.distances(src, d)
        if parity == ODD:
            return {u for u, k in dist.items() if k % 2}
        return set(dist)


@dataclass
class Move:
    color: int
    rule: str
    info: dict[str, Any] = field(default_factory=dict)


@dataclass
class StepRecord:
    v: int
    color: int
    rule: str
    info: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"v": self.v, "color": self.color, "rule": self.rule, **self.info}


@dataclass(frozen=True)
class OnlineInstance:
    graph: Graph
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", check_order(self.order, self.graph.n))


@dataclass
class Trace:
    graph: Graph
    order: tuple[int, ...]
    alg: str
    params: dict[str, Any]
    steps: list[StepRecord]

    @property
    def colors(self) -> list[int | None]:
        out: list[int | None] = [None] * self.graph.n
        for s in self.steps:
            if out[s.v] is None:
                out[s.v] = s.color
        return out

    @property
    def colors_used(self) -> int:
        return max((s.color for s in self.steps), default=0)

    @property
    def n(self) -> int:
        return self.graph.n

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.graph.n,
            "order": list(self.order),
            "steps": [s.to_dict() for s in self.steps],
            "colors_used": self.colors_used,
            "alg": self.alg,
            "params": self.params,
            "edges": [list(e) for e in self.graph.edges()],
        }


class TraceFormatError(ValueError):
    """A serialized trace is missing fields or is internally inconsistent."""


class ReplayAborted(RuntimeError):
    """The colorer rejected its input; ``trace`` holds the steps taken so far."""

    def __init__(self, trace: Trace, vertex: int, reason: str):
        super().__init__(f"aborted at vertex {vertex}: {reason}")
        self.trace = trace
        self.vertex = vertex
        self.reason = reason


def trace_to_json(trace: Trace) -> str:
    return json.dumps(trace.to_dict(), indent=1) + "\n"


def trace_from_dict(data: dict[str, Any]) -> Trace:
    try:
        n = int(data["n"])
        order = tuple(int(v) for v in data["order"])
        raw_steps = data["steps"]
        data["colors_used"]
        alg = str(data["alg"])
        params = dict(data.get("params", {}))
        edges = [tuple(e) for e in data["edges"]]
        steps = []
        for s in raw_steps:
            info = {k: val for k, val in s.items() if k not in ("v", "color", "rule")}
            steps.append(StepRecord(int(s["v"]), int(s["color"]), str(s["rule"]), info))
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceFormatError(f"malformed trace: {exc!r}") from None
    try:
        graph = Graph.from_edges(n, edges)
        order = check_order(order, n)
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from None
    return Trace(graph, order, alg, params, steps)


def trace_from_json(text: str) -> Trace:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise TraceFormatError("trace must be a JSON object")
    return trace_from_dict(data)


def replay(instance: OnlineInstance, alg: str = "ff", *, colorer=None, **params) -> Trace:
    """Run an online colorer over ``instance`` and return the full trace.

    ``alg`` and ``params`` select a colorer from the registry (see
    :func:`oncolor.algorithms.make_colorer`); pass ``colorer`` to drive a
    prebuilt object instead.
    """
    from .algorithms import AssumptionViolated, make_colorer, normalize

    g = instance.graph
    if colorer is None:
        alg, params = normalize(alg, params)
        colorer = make_colorer(alg, g.n, **params)
    recorded = {k: v for k, v in params.items() if v is not None and v is not False}
    trace = Trace(g, instance.order, alg, recorded, [])
    view = PrefixView()
    for v in instance.order:
        view.reveal(v, [u for u in g.adj[v] if u in view])
        try:
            move = colorer.step(view, v)
        except AssumptionViolated as exc:
            raise ReplayAborted(trace, v, str(exc)) from exc
        if not isinstance(move.color, int) or move.color < 1:
            raise ValueError(f"colorer produced invalid color {move.color!r}")
        trace.steps.append(StepRecord(v, move.color, move.rule, dict(move.info)))
    return trace


def validate(trace: Trace, **kwargs):
    """Properness plus every algorithm-specific invariant; see :func:`oncolor.verify.check_trace`."""
    from .verify import check_trace

    return check_trace(trace, **kwargs)
