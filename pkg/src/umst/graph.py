"""Edge-uncertainty graphs, hidden-truth instances and update bookkeeping."""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

from .area import Area, WeightLike, as_weight, format_weight
from .errors import (
    DisconnectedGraph,
    MalformedGraph,
    NotARealization,
    WastedUpdate,
)


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    area: Area

    @property
    def endpoints(self) -> tuple[str, str]:
        return (self.u, self.v)


class UncertainGraph:
    """An undirected multigraph with one uncertainty area per edge.

    Edge ids are unique strings; the position of an edge in ``edges`` is its
    internal index and serves as the deterministic tie-breaker everywhere.
    Instances are immutable: narrowing returns a new graph.
    """

    __slots__ = ("vertices", "edges", "_pos")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge], *, check_connected: bool = True):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        self.edges: tuple[Edge, ...] = tuple(edges)
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedGraph("duplicate vertex id")
        if not self.vertices:
            raise MalformedGraph("graph has no vertices")
        known = set(self.vertices)
        pos = {}
        for i, e in enumerate(self.edges):
            if e.id in pos:
                raise MalformedGraph(f"duplicate edge id {e.id!r}")
            if e.u not in known or e.v not in known:
                raise MalformedGraph(f"edge {e.id!r} has an unknown endpoint")
            if e.u == e.v:
                raise MalformedGraph(f"edge {e.id!r} is a self-loop")
            pos[e.id] = i
        self._pos = pos
        if check_connected and not self.is_connected():
            raise DisconnectedGraph("graph is not connected")

    def __repr__(self):
        return f"UncertainGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __eq__(self, other):
        if not isinstance(other, UncertainGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, eid) -> bool:
        return eid in self._pos

    def edge(self, eid: str) -> Edge:
        return self.edges[self._pos[eid]]

    def area(self, eid: str) -> Area:
        return self.edges[self._pos[eid]].area

    def index(self, eid: str) -> int:
        return self._pos[eid]

    def endpoints(self, eid: str) -> tuple[str, str]:
        e = self.edges[self._pos[eid]]
        return e.u, e.v

    @property
    def edge_ids(self) -> list[str]:
        return [e.id for e in self.edges]

    def nontrivial(self) -> list[str]:
        return [e.id for e in self.edges if not e.area.is_trivial]

    def is_connected(self) -> bool:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(self.vertices)

    def with_areas(self, areas: Mapping[str, Area]) -> "UncertainGraph":
        if not areas:
            return self
        for eid in areas:
            if eid not in self._pos:
                raise KeyError(eid)
        edges = [Edge(e.id, e.u, e.v, areas.get(e.id, e.area)) for e in self.edges]
        return UncertainGraph(self.vertices, edges, check_connected=False)

    def narrowed(self, values: Mapping[str, WeightLike]) -> "UncertainGraph":
        """Replace the area of every edge in ``values`` by its revealed point."""
        return self.with_areas({eid: self.area(eid).narrow(w) for eid, w in values.items()})

    def is_narrowing_of(self, other: "UncertainGraph") -> bool:
        if self.vertices != other.vertices or [e.id for e in self.edges] != [e.id for e in other.edges]:
            return False
        return all(a.area.issubset(b.area) for a, b in zip(self.edges, other.edges))

    def edge_key(self, eid: str) -> tuple[Fraction, Fraction, int]:
        a = self.area(eid)
        return (a.lo, a.hi, self._pos[eid])

    def sorted_edges(self) -> list[str]:
        """Edge ids ordered by lower limit, then upper limit, then index."""
        return sorted(self._pos, key=self.edge_key)

    def to_json(self, truth: Mapping[str, Fraction] | None = None) -> dict:
        edges = []
        for e in self.edges:
            item = {"id": e.id, "u": e.u, "v": e.v, "area": e.area.to_json()}
            if truth is not None:
                item["true_weight"] = format_weight(truth[e.id])
            edges.append(item)
        return {"model": "edge", "vertices": list(self.vertices), "edges": edges}


def make_graph(vertices: Iterable, edges: Iterable[tuple]) -> UncertainGraph:
    """Build a graph from ``(id, u, v, area)`` tuples; bare weights mean trivial areas."""
    out = []
    for eid, u, v, area in edges:
        if not isinstance(area, Area):
            area = Area.point(area)
        out.append(Edge(str(eid), str(u), str(v), area))
    return UncertainGraph([str(v) for v in vertices], out)


class Order(enum.Enum):
    BEFORE = "before"
    AFTER = "after"
    EQUAL_LIMITS = "equal-limits"


def compare_edges(g: UncertainGraph, e: str, f: str, *, strict: bool = False) -> Order:
    """Compare by (lower limit, upper limit); with ``strict`` ties fall back to the index."""
    ae, af = g.area(e), g.area(f)
    ke, kf = (ae.lo, ae.hi), (af.lo, af.hi)
    if ke == kf:
        if not strict or e == f:
            return Order.EQUAL_LIMITS
        ke, kf = g.index(e), g.index(f)
    return Order.BEFORE if ke < kf else Order.AFTER


def realize(g: UncertainGraph, weights: Mapping[str, WeightLike]) -> dict[str, Fraction]:
    """Validate that ``weights`` is a realization of ``g`` and return it as exact values."""
    out = {}
    for e in g.edges:
        if e.id not in weights:
            raise NotARealization(f"edge {e.id!r} has no weight")
        w = as_weight(weights[e.id])
        if w not in e.area:
            raise NotARealization(f"weight {format_weight(w)} of edge {e.id!r} lies outside {e.area}")
        out[e.id] = w
    extra = set(weights) - set(out)
    if extra:
        raise NotARealization(f"weights given for unknown edges {sorted(extra)}")
    return out


@dataclass(frozen=True)
class Instance:
    graph: UncertainGraph
    truth: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "truth", realize(self.graph, self.truth))

    def reveal(self, eid: str, view: UncertainGraph | None = None) -> Fraction:
        return self.truth[eid]

    def narrowed(self, eids: Iterable[str]) -> UncertainGraph:
        return self.graph.narrowed({e: self.truth[e] for e in eids})

    def to_json(self) -> dict:
        return self.graph.to_json(self.truth)


class UpdateTrace:
    """Ordered record of updated items; each item may appear only once."""

    def __init__(self, items: Iterable[str] = ()):
        self._items: list[str] = []
        for x in items:
            self.append(x)

    def append(self, item: str) -> None:
        if item in self._items:
            raise WastedUpdate(f"{item!r} was already updated")
        self._items.append(item)

    @property
    def count(self) -> int:
        return len(self._items)

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __contains__(self, item):
        return item in self._items

    def __eq__(self, other):
        if isinstance(other, UpdateTrace):
            return self._items == other._items
        if isinstance(other, (list, tuple)):
            return self._items == list(other)
        return NotImplemented

    def __repr__(self):
        return f"UpdateTrace({self._items!r})"

    def as_list(self) -> list[str]:
        return list(self._items)


Revealer = Union[Instance, Callable[[str, UncertainGraph], WeightLike]]


def _reveal(source: Revealer, eid: str, view: UncertainGraph) -> Fraction:
    if isinstance(source, Instance):
        return source.truth[eid]
    if hasattr(source, "reveal"):
        return as_weight(source.reveal(eid, view))
    return as_weight(source(eid, view))


@dataclass
class AlgoView:
    """What an algorithm currently knows: the narrowed graph and its update history."""

    graph: UncertainGraph
    trace: UpdateTrace = field(default_factory=UpdateTrace)


def update_edge(view: AlgoView, source: Revealer, eid: str) -> AlgoView:
    """Reveal the value of ``eid`` from ``source`` and narrow the view in place.

    ``source`` is an :class:`Instance` or anything with a ``reveal(eid, view)``
    method (adversaries), or a plain callable of the same signature.
    """
    area = view.graph.area(eid)
    if area.is_trivial:
        raise WastedUpdate(f"edge {eid!r} is already trivial")
    w = _reveal(source, eid, view.graph)
    view.graph = view.graph.with_areas({eid: area.narrow(w)})
    view.trace.append(eid)
    return view


# --- files -----------------------------------------------------------------

def graph_from_json(data: dict) -> tuple[UncertainGraph, dict[str, Fraction] | None]:
    if not isinstance(data, dict):
        raise MalformedGraph("instance file must hold a JSON object")
    if data.get("model", "edge") != "edge":
        raise MalformedGraph(f"expected an edge-model instance, got {data.get('model')!r}")
    try:
        vertices = [str(v) for v in data["vertices"]]
        raw_edges = data["edges"]
    except KeyError as exc:
        raise MalformedGraph(f"instance is missing {exc.args[0]!r}") from exc
    edges = []
    truth = {}
    for i, item in enumerate(raw_edges):
        try:
            eid = str(item.get("id", f"e{i}"))
            edges.append(Edge(eid, str(item["u"]), str(item["v"]), Area.from_json(item["area"])))
        except (KeyError, TypeError, AttributeError) as exc:
            raise MalformedGraph(f"edge #{i} is malformed") from exc
        if "true_weight" in item:
            tw = item["true_weight"]
            truth[eid] = as_weight(repr(tw) if isinstance(tw, float) else tw)
    g = UncertainGraph(vertices, edges)
    if truth and len(truth) != len(edges):
        raise MalformedGraph("true_weight must be given for all edges or none")
    return g, (truth or None)


def load_instance(path) -> Instance:
    with open(path) as fh:
        data = json.load(fh)
    g, truth = graph_from_json(data)
    if truth is None:
        raise MalformedGraph(f"{path}: no true weights in instance file")
    return Instance(g, truth)


def dump_instance(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(inst.to_json(), fh, indent=1)
        fh.write("\n")


def tree_path(tree_adj: Mapping[str, list[tuple[str, str]]], s: str, t: str) -> list[str] | None:
    """Edge ids on the path from ``s`` to ``t`` in a forest given as adjacency lists."""
    if s == t:
        return []
    prev = {s: None}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y, eid in tree_adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, eid)
                if y == t:
                    path = []
                    while prev[y] is not None:
                        y, eid = prev[y]
                        path.append(eid)
                    path.reverse()
                    return path
                queue.append(y)
    return None
