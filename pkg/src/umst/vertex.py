"""Vertex uncertainty in the Euclidean plane.

Each vertex lies somewhere in a region (a point, an open axis-aligned
rectangle or an open disk) and edge weights are Euclidean distances.  The
vertex problem is handled by projecting it onto the edge model: the area of
an edge is the set of distances its endpoints can realise.  An edge update is
simulated by revealing both endpoints.

Distances are computed in double precision and then snapped to a grid of
``TAU`` so that the edge model keeps working with exact rationals.
"""
from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

import numpy as np

from .area import Area
from .errors import InstanceTooLarge, MalformedGraph, NotARealization, UnsupportedGeometry, WastedUpdate
from .graph import Edge, UncertainGraph, UpdateTrace
from .oracle import oracle_bound
from .ured import PassOutcome, red_pass
from .verify import SpanningTree, find_verifiable_tree

TAU = 1e-9
_GRID = 10**9


def snap(x: float) -> Fraction:
    """Round a float distance to the nearest multiple of ``TAU`` as an exact value."""
    return Fraction(round(x * _GRID), _GRID)


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("coordinates must be finite")

    def __iter__(self):
        yield self.x
        yield self.y

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class PointRegion:
    """A trivial region: the location is known."""

    p: Point

    is_trivial = True

    def contains(self, q, tol: float = TAU) -> bool:
        return self.p.dist(as_point(q)) <= tol

    def nearest(self, q: Point) -> float:
        return self.p.dist(q)

    def farthest(self, q: Point) -> float:
        return self.p.dist(q)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.tile([self.p.x, self.p.y], (n, 1))

    def to_json(self):
        return {"kind": "point", "x": self.p.x, "y": self.p.y}


@dataclass(frozen=True)
class Rect:
    """Open axis-aligned rectangle with lower-left corner ``(x, y)``."""

    x: float
    y: float
    width: float
    height: float

    is_trivial = False

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise UnsupportedGeometry("rectangle sides must be positive")

    @property
    def x1(self):
        return self.x + self.width

    @property
    def y1(self):
        return self.y + self.height

    def corners(self) -> list[Point]:
        return [Point(self.x, self.y), Point(self.x1, self.y), Point(self.x, self.y1), Point(self.x1, self.y1)]

    def contains(self, q, tol: float = 0.0) -> bool:
        q = as_point(q)
        return self.x < q.x < self.x1 and self.y < q.y < self.y1

    def nearest(self, q: Point) -> float:
        dx = max(self.x - q.x, 0.0, q.x - self.x1)
        dy = max(self.y - q.y, 0.0, q.y - self.y1)
        return math.hypot(dx, dy)

    def farthest(self, q: Point) -> float:
        return max(c.dist(q) for c in self.corners())

    def sample(self, rng, n):
        xs = rng.uniform(self.x, self.x1, n)
        ys = rng.uniform(self.y, self.y1, n)
        return np.column_stack([xs, ys])

    def to_json(self):
        return {"kind": "rect", "x": self.x, "y": self.y, "width": self.width, "height": self.height}


@dataclass(frozen=True)
class Disk:
    """Open disk."""

    cx: float
    cy: float
    r: float

    is_trivial = False

    def __post_init__(self):
        if not self.r > 0:
            raise UnsupportedGeometry("disk radius must be positive")

    @property
    def center(self) -> Point:
        return Point(self.cx, self.cy)

    def contains(self, q, tol: float = 0.0) -> bool:
        return self.center.dist(as_point(q)) < self.r

    def nearest(self, q: Point) -> float:
        return max(self.center.dist(q) - self.r, 0.0)

    def farthest(self, q: Point) -> float:
        return self.center.dist(q) + self.r

    def sample(self, rng, n):
        rad = self.r * np.sqrt(rng.uniform(0, 1, n))
        ang = rng.uniform(0, 2 * math.pi, n)
        return np.column_stack([self.cx + rad * np.cos(ang), self.cy + rad * np.sin(ang)])

    def to_json(self):
        return {"kind": "disk", "x": self.cx, "y": self.cy, "r": self.r}


Region = Union[PointRegion, Rect, Disk]


def point_region(x: float, y: float) -> PointRegion:
    return PointRegion(Point(float(x), float(y)))


def region_from_json(data) -> Region:
    try:
        kind = data["kind"]
        if kind == "point":
            return point_region(data["x"], data["y"])
        if kind == "rect":
            return Rect(float(data["x"]), float(data["y"]), float(data["width"]), float(data["height"]))
        if kind == "disk":
            return Disk(float(data["x"]), float(data["y"]), float(data["r"]))
    except (KeyError, TypeError) as exc:
        raise MalformedGraph(f"malformed region {data!r}") from exc
    raise MalformedGraph(f"unknown region kind {kind!r}")


def distance_limits(r1: Region, r2: Region) -> tuple[float, float]:
    """Infimum and supremum of the distance between a point of ``r1`` and one of ``r2``."""
    if isinstance(r2, PointRegion) and not isinstance(r1, PointRegion):
        r1, r2 = r2, r1
    if isinstance(r1, PointRegion):
        return r2.nearest(r1.p), r2.farthest(r1.p)
    if isinstance(r1, Disk) and isinstance(r2, Disk):
        d = r1.center.dist(r2.center)
        return max(d - r1.r - r2.r, 0.0), d + r1.r + r2.r
    if isinstance(r1, Rect) and isinstance(r2, Disk):
        r1, r2 = r2, r1
    if isinstance(r1, Disk):
        # r2 is a rectangle
        return max(r2.nearest(r1.center) - r1.r, 0.0), r2.farthest(r1.center) + r1.r
    dx = max(r1.x - r2.x1, 0.0, r2.x - r1.x1)
    dy = max(r1.y - r2.y1, 0.0, r2.y - r1.y1)
    hi = max(a.dist(b) for a in r1.corners() for b in r2.corners())
    return math.hypot(dx, dy), hi


@functools.lru_cache(maxsize=1 << 16)
def region_distance_area(r1: Region, r2: Region) -> Area:
    """Edge area spanned by all distances between the two regions.

    Trivial when both regions are points, open otherwise: with disjoint
    closures neither limit is attained inside open regions.
    """
    lo, hi = distance_limits(r1, r2)
    if not lo > 0:
        raise UnsupportedGeometry("regions have overlapping closures")
    if r1.is_trivial and r2.is_trivial:
        return Area.point(snap(lo))
    slo, shi = snap(lo), snap(hi)
    if slo >= shi:
        raise UnsupportedGeometry("distance area is narrower than the snapping grid")
    return Area(slo, shi, True, True)


def edge_id(u: str, v: str) -> str:
    return f"{u}-{v}"


class VertexGraph:
    """Vertices with regions plus the edge list (complete graph by default)."""

    def __init__(self, vertices: Iterable[str], regions: Mapping[str, Region],
                 edges: Iterable[tuple[str, str]] | None = None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedGraph("duplicate vertex id")
        missing = [v for v in self.vertices if v not in regions]
        if missing:
            raise MalformedGraph(f"vertices without region: {missing}")
        self.regions = {v: regions[v] for v in self.vertices}
        if edges is None:
            edges = itertools.combinations(self.vertices, 2)
        self.edges = tuple((str(u), str(v)) for u, v in edges)
        self.complete = len(self.edges) == len(self.vertices) * (len(self.vertices) - 1) // 2
        # fail early on geometry problems and disconnection
        self.project()

    def nontrivial(self, regions: Mapping[str, Region] | None = None) -> list[str]:
        regions = self.regions if regions is None else regions
        return [v for v in self.vertices if not regions[v].is_trivial]

    def project(self, regions: Mapping[str, Region] | None = None) -> UncertainGraph:
        regions = self.regions if regions is None else regions
        edges = [
            Edge(edge_id(u, v), u, v, region_distance_area(regions[u], regions[v]))
            for u, v in self.edges
        ]
        return UncertainGraph(self.vertices, edges)

    def with_locations(self, locations: Mapping[str, Point]) -> dict[str, Region]:
        regions = dict(self.regions)
        for v, p in locations.items():
            regions[v] = PointRegion(as_point(p))
        return regions


@dataclass(frozen=True)
class VertexInstance:
    graph: VertexGraph
    truth: Mapping[str, Point]

    def __post_init__(self):
        truth = {}
        for v in self.graph.vertices:
            if v not in self.truth:
                raise NotARealization(f"vertex {v!r} has no location")
            p = as_point(self.truth[v])
            if not self.graph.regions[v].contains(p):
                raise NotARealization(f"location of {v!r} lies outside its region")
            truth[v] = p
        object.__setattr__(self, "truth", truth)

    def reveal(self, v: str, regions=None) -> Point:
        return self.truth[v]

    def to_json(self) -> dict:
        data = {
            "model": "vertex",
            "vertices": [
                {"id": v, "region": self.graph.regions[v].to_json(), "true_location": list(self.truth[v])}
                for v in self.graph.vertices
            ],
        }
        if not self.graph.complete:
            data["edges"] = [{"u": u, "v": v} for u, v in self.graph.edges]
        return data


def project_to_edge_uncertainty(vi: VertexInstance):
    """The associated edge instance: distance areas plus realised distances."""
    from .graph import Instance

    g = vi.graph.project()
    truth = {edge_id(u, v): snap(vi.truth[u].dist(vi.truth[v])) for u, v in vi.graph.edges}
    return Instance(g, truth)


def vertex_instance_from_json(data) -> VertexInstance:
    if not isinstance(data, dict) or data.get("model") != "vertex":
        raise MalformedGraph("expected a vertex-model instance")
    try:
        ids, regions, truth = [], {}, {}
        for item in data["vertices"]:
            v = str(item["id"])
            ids.append(v)
            regions[v] = region_from_json(item["region"])
            truth[v] = as_point(item["true_location"])
        edges = None
        if "edges" in data:
            edges = [(str(e["u"]), str(e["v"])) for e in data["edges"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise MalformedGraph("malformed vertex instance") from exc
    return VertexInstance(VertexGraph(ids, regions, edges), truth)


def load_vertex_instance(path) -> VertexInstance:
    with open(path) as fh:
        return vertex_instance_from_json(json.load(fh))


def dump_vertex_instance(vi: VertexInstance, path) -> None:
    with open(path, "w") as fh:
        json.dump(vi.to_json(), fh, indent=1)
        fh.write("\n")


# --- running u-red on vertex instances -----------------------------------

@dataclass(frozen=True)
class VertexPairUpdate:
    run: int
    regions: Mapping[str, Region]
    view: UncertainGraph
    f: str
    g: str
    updated: tuple[str, ...]


@dataclass
class VertexRunResult:
    tree: SpanningTree
    trace: UpdateTrace
    runs: int
    regions: dict[str, Region]
    graph: UncertainGraph
    events: list[dict] = field(default_factory=list)
    pairs: list[VertexPairUpdate] = field(default_factory=list)

    @property
    def updates(self) -> int:
        return len(self.trace)

    def event_lines(self) -> list[str]:
        return [json.dumps(ev) for ev in self.events]


VertexRevealer = Union[VertexInstance, Callable[[str, Mapping[str, Region]], Point]]


def _reveal_vertex(source, v, regions) -> Point:
    if hasattr(source, "reveal"):
        return as_point(source.reveal(v, regions))
    return as_point(source(v, regions))


def run_vertex_u_red(source, reveal: VertexRevealer | None = None) -> VertexRunResult:
    """u-red on the projected graph, each edge update replaced by endpoint updates.

    Endpoints already revealed are skipped; all edge areas are re-derived
    from the regions before every pass.
    """
    if isinstance(source, VertexInstance):
        vg = source.graph
        reveal = source if reveal is None else reveal
    else:
        vg = source
        if reveal is None:
            raise TypeError("a bare vertex graph needs a reveal source")
    regions = dict(vg.regions)
    trace = UpdateTrace()
    events: list[dict] = []
    pairs: list[VertexPairUpdate] = []
    run = 1
    while True:
        view = vg.project(regions)
        outcome: PassOutcome = red_pass(view)
        events.extend({"run": run, "event": kind, "edges": edges} for kind, edges in outcome.events)
        if outcome.stuck is None:
            events.append({"run": run, "event": "return", "edges": sorted(outcome.tree, key=view.index)})
            return VertexRunResult(outcome.tree, trace, run, regions, view, events, pairs)
        _, f, g = outcome.stuck
        before = dict(regions)
        done = []
        for e in (f, g):
            for v in view.endpoints(e):
                if regions[v].is_trivial:
                    continue
                p = _reveal_vertex(reveal, v, dict(regions))
                if not regions[v].contains(p):
                    raise NotARealization(f"revealed location of {v!r} lies outside its region")
                regions[v] = PointRegion(p)
                trace.append(v)
                done.append(v)
        if not done:
            raise WastedUpdate("update pair touches no unrevealed vertex")
        pairs.append(VertexPairUpdate(run, before, view, f, g, tuple(done)))
        events.append({"run": run, "event": "update-pair", "edges": [f, g], "vertices": done})
        run += 1


# --- vertex optimum ---------------------------------------------------------

def _vertex_view(vi: VertexInstance, regions) -> dict[str, Region]:
    return dict(vi.graph.regions if regions is None else regions)


def vertex_verifies(vi: VertexInstance, regions, reveal: Iterable[str]) -> bool:
    view = dict(regions)
    for v in reveal:
        view[v] = PointRegion(vi.truth[v])
    return find_verifiable_tree(vi.graph.project(view)) is not None


def _vertex_candidates(vi, regions, bound):
    cand = [v for v in vi.graph.vertices if not regions[v].is_trivial]
    limit = oracle_bound(bound)
    if len(cand) > limit:
        raise InstanceTooLarge(f"{len(cand)} non-trivial vertices exceed the oracle bound {limit}")
    return cand


def vertex_opt(vi: VertexInstance, regions=None, *, bound: int | None = None) -> int:
    """Fewest vertex reveals after which the projected graph has a verifiable tree."""
    regions = _vertex_view(vi, regions)
    cand = _vertex_candidates(vi, regions, bound)
    for k in range(len(cand) + 1):
        for subset in itertools.combinations(cand, k):
            if vertex_verifies(vi, regions, subset):
                return k
    raise AssertionError("revealing every vertex must verify")


def vertex_minimal_verifying_sets(vi: VertexInstance, regions=None, *, bound: int | None = None):
    regions = _vertex_view(vi, regions)
    cand = _vertex_candidates(vi, regions, bound)
    found: list[frozenset[str]] = []
    for k in range(len(cand) + 1):
        for subset in itertools.combinations(cand, k):
            s = frozenset(subset)
            if any(m <= s for m in found):
                continue
            if vertex_verifies(vi, regions, subset):
                found.append(s)
    return found


def vertex_is_witness_set(vi: VertexInstance, regions, w: Iterable[str], *, bound: int | None = None) -> bool:
    regions = _vertex_view(vi, regions)
    cand = _vertex_candidates(vi, regions, bound)
    w = set(w)
    return not vertex_verifies(vi, regions, [v for v in cand if v not in w])
