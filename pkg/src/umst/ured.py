"""The u-red algorithm for minimum spanning trees with edge uncertainty.

Edges are inserted in (lower limit, upper limit) order.  Whenever an
insertion closes a cycle, an always maximal edge of that cycle is deleted if
one exists; otherwise the edge ``f`` with the largest upper limit and an edge
``g`` whose upper limit exceeds the lower limit of ``f`` are updated and the
whole procedure starts over on the narrowed graph.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NoCycle
from .graph import AlgoView, Instance, Revealer, UncertainGraph, UpdateTrace, update_edge
from .verify import SpanningTree, always_maximal


def _path(adj: dict, s: str, t: str, skip: str | None = None) -> list[str] | None:
    prev = {s: None}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            break
        for eid, y in adj[x].items():
            if eid != skip and y not in prev:
                prev[y] = (x, eid)
                queue.append(y)
    if t not in prev:
        return None
    path = []
    y = t
    while prev[y] is not None:
        y, eid = prev[y]
        path.append(eid)
    path.reverse()
    return path


def find_unique_cycle(g: UncertainGraph, present: Iterable[str], closing: str) -> list[str]:
    """Edges of the cycle created by adding ``closing`` to the forest ``present``.

    The result runs along the path between the endpoints of ``closing`` and
    ends with ``closing`` itself.
    """
    adj = {v: {} for v in g.vertices}
    for eid in present:
        if eid == closing:
            continue
        u, v = g.endpoints(eid)
        adj[u][eid] = v
        adj[v][eid] = u
    u, v = g.endpoints(closing)
    path = _path(adj, u, v)
    if path is None:
        raise NoCycle(f"adding {closing!r} does not close a cycle")
    return path + [closing]


def choose_always_maximal(g: UncertainGraph, cycle: Sequence[str], latest: str | None = None) -> str | None:
    """Always maximal edge to delete: ``latest`` if eligible, else the lowest index."""
    if latest is not None and always_maximal(g, cycle, latest):
        return latest
    found = [c for c in cycle if always_maximal(g, cycle, c)]
    if not found:
        return None
    return min(found, key=g.index)


def choose_fg(g: UncertainGraph, cycle: Sequence[str]) -> tuple[str, str]:
    """The pair to update in a cycle without always maximal edges.

    ``f`` maximises the upper limit; ``g`` maximises the upper limit among the
    remaining edges whose upper limit exceeds the lower limit of ``f``.  Ties
    go to the lower edge index.
    """
    f = min(cycle, key=lambda c: (-g.area(c).hi, g.index(c)))
    lf = g.area(f).lo
    candidates = [c for c in cycle if c != f and g.area(c).hi > lf]
    if not candidates:
        raise ValueError("cycle has an always maximal edge; no update pair exists")
    second = min(candidates, key=lambda c: (-g.area(c).hi, g.index(c)))
    return f, second


@dataclass
class PassOutcome:
    """Result of one update-free pass over the sorted edges."""

    tree: SpanningTree | None
    events: list[tuple[str, list[str]]]
    stuck: tuple[list[str], str, str] | None = None


def red_pass(g: UncertainGraph) -> PassOutcome:
    adj = {v: {} for v in g.vertices}
    # deleting a cycle edge never disconnects, so components only ever merge
    comp = {v: v for v in g.vertices}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    events = []
    for eid in g.sorted_edges():
        u, v = g.endpoints(eid)
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
            path = None
        else:
            path = _path(adj, u, v)
        adj[u][eid] = v
        adj[v][eid] = u
        events.append(("add", [eid]))
        if path is None:
            continue
        cycle = path + [eid]
        drop = choose_always_maximal(g, cycle, latest=eid)
        if drop is None:
            return PassOutcome(None, events, (cycle, *choose_fg(g, cycle)))
        a, b = g.endpoints(drop)
        del adj[a][drop]
        del adj[b][drop]
        events.append(("delete", [drop]))
    tree = frozenset(eid for x in adj.values() for eid in x)
    return PassOutcome(tree, events)


@dataclass(frozen=True)
class PairUpdate:
    run: int
    view: UncertainGraph
    cycle: tuple[str, ...]
    f: str
    g: str
    updated: tuple[str, ...]


@dataclass
class RunResult:
    tree: SpanningTree
    trace: UpdateTrace
    runs: int
    graph: UncertainGraph
    events: list[dict] = field(default_factory=list)
    pairs: list[PairUpdate] = field(default_factory=list)

    @property
    def updates(self) -> int:
        return len(self.trace)

    def event_lines(self) -> list[str]:
        return [json.dumps(ev) for ev in self.events]


def run_u_red(source, reveal: Revealer | None = None) -> RunResult:
    """Run u-red until a verifiable tree is found.

    ``source`` is an :class:`Instance`, whose hidden weights answer the
    updates, or an :class:`UncertainGraph` together with ``reveal`` (for
    instance an adversary) supplying values on demand.
    """
    if isinstance(source, Instance):
        graph = source.graph
        reveal = source if reveal is None else reveal
    else:
        graph = source
        if reveal is None:
            raise TypeError("a bare graph needs a reveal source")
    view = AlgoView(graph)
    events: list[dict] = []
    pairs: list[PairUpdate] = []
    run = 1
    while True:
        outcome = red_pass(view.graph)
        events.extend({"run": run, "event": kind, "edges": edges} for kind, edges in outcome.events)
        if outcome.stuck is None:
            events.append({"run": run, "event": "return", "edges": sorted(outcome.tree, key=graph.index)})
            return RunResult(outcome.tree, view.trace, run, view.graph, events, pairs)
        cycle, f, g = outcome.stuck
        before = view.graph
        assert not before.area(f).is_trivial
        done = []
        for e in (f, g):
            if not view.graph.area(e).is_trivial:
                update_edge(view, reveal, e)
                done.append(e)
        pairs.append(PairUpdate(run, before, tuple(cycle), f, g, tuple(done)))
        events.append({"run": run, "event": "update-pair", "edges": done})
        run += 1
