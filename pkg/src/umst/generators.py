"""Instance families, random instances and adaptive adversaries.

The families reproduce the known lower-bound constructions: the gadget path
(ratio 2 for edge uncertainty), the star and the half-open cycle (no
constant ratio once areas may be closed at one end) and the four-rectangle
construction for vertex uncertainty (ratio 4).
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Mapping, Sequence

from .area import Area
from .errors import MalformedGraph, NotARealization, UnsupportedGeometry, WastedUpdate
from .graph import Edge, Instance, UncertainGraph
from .vertex import (
    Disk,
    Point,
    PointRegion,
    Rect,
    Region,
    VertexGraph,
    VertexInstance,
    distance_limits,
    point_region,
    project_to_edge_uncertainty,
)

# --- gadget path ------------------------------------------------------------

GADGET_A = Area.point(1)
GADGET_B = Area.open(3, 7)
GADGET_C = Area.open(5, 9)


def gen_gadget_path(k: int) -> UncertainGraph:
    """Path ``v1..vk`` with a triangle gadget ``a_i, b_i, c_i`` hanging off each vertex."""
    if k < 1:
        raise ValueError("need at least one gadget")
    vertices, edges = [], []
    for i in range(1, k + 1):
        vertices += [f"v{i}", f"x{i}", f"y{i}"]
    for i in range(1, k):
        edges.append(Edge(f"p{i}", f"v{i}", f"v{i + 1}", Area.point(1)))
    for i in range(1, k + 1):
        edges.append(Edge(f"a{i}", f"x{i}", f"y{i}", GADGET_A))
        edges.append(Edge(f"b{i}", f"v{i}", f"x{i}", GADGET_B))
        edges.append(Edge(f"c{i}", f"v{i}", f"y{i}", GADGET_C))
    return UncertainGraph(vertices, edges)


def gadget_instance(k: int, b: Fraction | int = 6, c: Fraction | int = 8) -> Instance:
    g = gen_gadget_path(k)
    truth = {e.id: e.area.lo for e in g.edges if e.area.is_trivial}
    for i in range(1, k + 1):
        truth[f"b{i}"] = Fraction(b)
        truth[f"c{i}"] = Fraction(c)
    return Instance(g, truth)


class Adversary:
    """Answers update requests online and commits to every answer it gives."""

    def __init__(self):
        self.revealed: dict[str, object] = {}
        self.history: list[str] = []

    def choose(self, item: str, view):
        raise NotImplementedError

    def reveal(self, item: str, view):
        if item in self.revealed:
            raise WastedUpdate(f"{item!r} was already revealed")
        value = self.choose(item, view)
        self.revealed[item] = value
        self.history.append(item)
        return value


class GadgetAdversary(Adversary):
    """Whichever of ``b_i``/``c_i`` is asked first weighs 6; the other then
    comes out so that updating it alone would have sufficed."""

    def choose(self, item, view):
        kind, idx = item[0], item[1:]
        if kind not in "bc" or not idx.isdigit():
            area = view.area(item)
            if area.is_trivial:
                return area.lo
            raise KeyError(f"{item!r} is not a gadget edge")
        other = ("c" if kind == "b" else "b") + idx
        if other not in self.revealed:
            return Fraction(6)
        return Fraction(8) if kind == "c" else Fraction(4)

    def induced_instance(self, g: UncertainGraph) -> Instance:
        return _complete_play(g, self.revealed)


def gadget_adversary() -> GadgetAdversary:
    return GadgetAdversary()


def _complete_play(g: UncertainGraph, revealed: Mapping[str, Fraction]) -> Instance:
    truth = {}
    for e in g.edges:
        if e.id in revealed:
            truth[e.id] = revealed[e.id]
        else:
            truth[e.id] = e.area.lo if e.area.is_trivial else e.area.midpoint()
    return Instance(g, truth)


# --- star and half-open cycle ----------------------------------------------

def _area_of(kind: str, lo, hi) -> Area:
    flags = {"closed": (False, False), "open": (True, True),
             "closed-open": (False, True), "open-closed": (True, False)}
    try:
        lo_open, hi_open = flags[kind]
    except KeyError:
        raise ValueError(f"unknown area kind {kind!r}") from None
    return Area(Fraction(lo), Fraction(hi), lo_open, hi_open)


def gen_star(k: int, pos: int, complete_bipartite: bool = False, kind: str = "closed") -> Instance:
    """Two hubs ``u``/``v`` with ``k`` trivial spokes each and cross edges ``x_i``.

    Cross edges have area [2,4] (``kind="closed-open"`` gives [2,4)); all weigh
    3 except ``x_pos`` which weighs 2.  With ``complete_bipartite`` every
    pair of spoke vertices is joined.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if not 1 <= pos <= k:
        raise ValueError(f"pos must lie in 1..{k}")
    vertices = ["u", "v"] + [f"u{i}" for i in range(1, k + 1)] + [f"v{i}" for i in range(1, k + 1)]
    edges, truth = [], {}
    for i in range(1, k + 1):
        for hub in "uv":
            eid = f"s{hub}{i}"
            edges.append(Edge(eid, hub, f"{hub}{i}", Area.point(1)))
            truth[eid] = Fraction(1)
    cross = _area_of(kind, 2, 4)
    for i in range(1, k + 1):
        edges.append(Edge(f"x{i}", f"u{i}", f"v{i}", cross))
        truth[f"x{i}"] = Fraction(2 if i == pos else 3)
    if complete_bipartite:
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                if i != j:
                    eid = f"x{i}_{j}"
                    edges.append(Edge(eid, f"u{i}", f"v{j}", cross))
                    truth[eid] = Fraction(3)
    return Instance(UncertainGraph(vertices, edges), truth)


def gen_half_open_cycle(k: int, pos: int | None = None, kind: str = "open-closed") -> Instance:
    """A ``k``-cycle of (2,4] edges; ``e_pos`` weighs 4, the rest 3.

    ``pos=None`` makes every edge weigh 3.
    """
    if k < 3:
        raise ValueError("need k >= 3")
    if pos is not None and not 1 <= pos <= k:
        raise ValueError(f"pos must lie in 1..{k}")
    area = _area_of(kind, 2, 4)
    vertices = [f"c{i}" for i in range(1, k + 1)]
    edges, truth = [], {}
    for i in range(1, k + 1):
        eid = f"e{i}"
        edges.append(Edge(eid, f"c{i}", f"c{i % k + 1}", area))
        truth[eid] = Fraction(4 if i == pos else 3)
    return Instance(UncertainGraph(vertices, edges), truth)


# --- random edge instances ---------------------------------------------------

def gen_random(seed: int, n: int, edge_prob: float = 0.5, trivial_frac: float = 0.3,
               area_width_range: tuple[int, int] = (1, 4), *, max_edges: int | None = None,
               max_nontrivial: int | None = None, kinds: Sequence[str] = ("open",),
               value_range: tuple[int, int] = (0, 8), denominator: int = 2) -> Instance:
    """Random connected instance on ``n`` vertices, deterministic in ``seed``.

    A random spanning tree guarantees connectivity; further edges appear with
    probability ``edge_prob``.  Limits are integers so that equal limits are
    common; true weights sit on a grid of ``1/denominator`` inside the area.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = random.Random(seed)
    vertices = [f"n{i}" for i in range(n)]
    pairs = []
    order = vertices[:]
    rng.shuffle(order)
    for i in range(1, n):
        pairs.append((order[rng.randrange(i)], order[i]))
    tree_pairs = {frozenset(p) for p in pairs}
    extra = [(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:]
             if frozenset((a, b)) not in tree_pairs and rng.random() < edge_prob]
    rng.shuffle(extra)
    pairs += extra
    if max_edges is not None:
        pairs = pairs[:max(max_edges, n - 1)]
    rng.shuffle(pairs)
    edges, truth = [], {}
    nontrivial = 0
    for i, (a, b) in enumerate(pairs):
        eid = f"e{i}"
        lo = rng.randint(*value_range)
        make_trivial = rng.random() < trivial_frac or (
            max_nontrivial is not None and nontrivial >= max_nontrivial)
        if make_trivial:
            area = Area.point(lo)
            w = Fraction(lo)
        else:
            nontrivial += 1
            width = rng.randint(*area_width_range)
            area = _area_of(rng.choice(list(kinds)), lo, lo + width)
            steps = width * denominator
            k_lo = 1 if area.lo_open else 0
            k_hi = steps - 1 if area.hi_open else steps
            w = area.lo + Fraction(rng.randint(k_lo, k_hi), denominator)
        edges.append(Edge(eid, a, b, area))
        truth[eid] = w
    return Instance(UncertainGraph(vertices, edges), truth)


# --- vertex lower bound ------------------------------------------------------

THIN = 1e-6
COPY_SPACING = 30.0


def _lb_copy(j: int, ox: float, thin: float):
    """Regions of one copy of the four-rectangle construction, shifted by ``ox``.

    A and B lie on the line y=0 with a gap of 7, C and D on y=-7.5 with a gap
    of 4, all of length 2.  Every trivial chain point keeps enough distance
    from the rectangles that, in the projected edge graph, the only open
    question is whether AB or CD joins the left and right halves.
    """
    regions: dict[str, Region] = {}
    roles: dict[str, str] = {}

    def rect(name, x, y):
        vid = f"{name}{j}"
        regions[vid] = Rect(ox + x, y, 2.0, thin)
        roles[vid] = name
        return vid

    rect("A", 0.0, -thin)
    rect("B", 9.0, -thin)
    rect("C", 1.0, -7.5)
    rect("D", 7.0, -7.5)

    left = [(1, 1), (1, 2)] + [(x, 2) for x in range(0, -7, -1)]
    left += [(-6, y) for y in range(1, -16, -1)]
    left += [(x, -15) for x in range(-5, 2)] + [(1, -14)]
    right = [(10, 1), (10, 2)] + [(x, 2) for x in range(11, 17)]
    right += [(16, y) for y in range(1, -16, -1)]
    right += [(x, -15) for x in range(15, 8, -1)] + [(9, -14)]
    chain = []
    for side, pts in (("L", left), ("R", right)):
        for i, (x, y) in enumerate(pts):
            vid = f"t{j}{side}{i}"
            regions[vid] = point_region(ox + x, y)
            chain.append(vid)
    return regions, roles


def gen_vertex_lb(copies: int = 1, eps: float = 1e-2, thin: float = THIN):
    """Vertex graph of ``copies`` joined copies plus the matching adversary."""
    if copies < 1:
        raise ValueError("need at least one copy")
    regions: dict[str, Region] = {}
    roles: dict[str, tuple[str, int]] = {}
    for j in range(copies):
        ox = j * COPY_SPACING
        r, rl = _lb_copy(j, ox, thin)
        regions.update(r)
        roles.update({v: (name, j) for v, name in rl.items()})
        if j + 1 < copies:
            # unit-spaced trivial points from this copy's right column to the next copy's left one
            for i, x in enumerate(range(17, int(COPY_SPACING) - 6)):
                regions[f"j{j}_{i}"] = point_region(ox + x, 2)
    vg = VertexGraph(list(regions), regions)
    return vg, VertexAdversary(vg, roles, eps)


class VertexAdversary(Adversary):
    """First three reveals per copy: A and D at their right end, B and C at
    their left end.  The fourth goes to the opposite end, so that revealing
    that vertex alone would have settled the tree."""

    def __init__(self, vg: VertexGraph, roles: Mapping[str, tuple[str, int]], eps: float = 1e-2):
        super().__init__()
        self.vg = vg
        self.roles = dict(roles)
        self.eps = eps
        self.count: dict[int, int] = {}

    def choose(self, v, regions):
        if v not in self.roles:
            region = self.vg.regions[v]
            if isinstance(region, PointRegion):
                return region.p
            raise KeyError(f"{v!r} is not part of the construction")
        name, j = self.roles[v]
        n = self.count.get(j, 0)
        self.count[j] = n + 1
        rightward = name in "AD"
        if n >= 3:
            rightward = not rightward
        r = self.vg.regions[v]
        x = r.x1 - self.eps if rightward else r.x + self.eps
        return Point(x, r.y + r.height / 2)

    def induced_instance(self) -> VertexInstance:
        truth = {}
        for v, r in self.vg.regions.items():
            if v in self.revealed:
                truth[v] = self.revealed[v]
            elif isinstance(r, PointRegion):
                truth[v] = r.p
            else:
                truth[v] = _region_center(r)
        return VertexInstance(self.vg, truth)


def vertex_adversary(vg: VertexGraph, roles=None, eps: float = 1e-2) -> VertexAdversary:
    if roles is None:
        roles = {v: (v[0], int(v[1:])) for v, r in vg.regions.items()
                 if not r.is_trivial and v[0] in "ABCD" and v[1:].isdigit()}
    return VertexAdversary(vg, roles, eps)


def _region_center(r: Region) -> Point:
    if isinstance(r, PointRegion):
        return r.p
    if isinstance(r, Rect):
        return Point(r.x + r.width / 2, r.y + r.height / 2)
    return r.center


# --- random vertex instances -------------------------------------------------

def gen_random_vertex(seed: int, n: int, nontrivial: int, *, box: float = 6.0,
                      size_range: tuple[float, float] = (0.2, 1.5), min_gap: float = 0.05,
                      edge_prob: float | None = None, max_tries: int = 1000) -> VertexInstance:
    """Random vertex instance with disjoint region closures, deterministic in ``seed``.

    ``edge_prob=None`` gives the complete graph; otherwise a random spanning
    tree plus random extra edges.
    """
    if not 0 <= nontrivial <= n:
        raise ValueError("nontrivial must lie in 0..n")
    rng = random.Random(seed)
    for _ in range(max_tries):
        regions: dict[str, Region] = {}
        kinds = ["region"] * nontrivial + ["point"] * (n - nontrivial)
        rng.shuffle(kinds)
        ok = True
        for i, kind in enumerate(kinds):
            x, y = rng.uniform(0, box), rng.uniform(0, box)
            if kind == "point":
                r: Region = point_region(x, y)
            elif rng.random() < 0.5:
                r = Rect(x, y, rng.uniform(*size_range), rng.uniform(*size_range))
            else:
                r = Disk(x, y, rng.uniform(*size_range) / 2)
            for other in regions.values():
                if distance_limits(r, other)[0] < min_gap:
                    ok = False
                    break
            if not ok:
                break
            regions[f"q{i}"] = r
        if not ok:
            continue
        vertices = list(regions)
        edges = None
        if edge_prob is not None:
            order = vertices[:]
            rng.shuffle(order)
            pairs = {frozenset((order[rng.randrange(i)], order[i])) for i in range(1, n)}
            for i, a in enumerate(vertices):
                for b in vertices[i + 1:]:
                    if rng.random() < edge_prob:
                        pairs.add(frozenset((a, b)))
            edges = sorted(tuple(sorted(p)) for p in pairs)
        truth = {v: _random_inside(rng, r) for v, r in regions.items()}
        try:
            vg = VertexGraph(vertices, regions, edges)
            vi = VertexInstance(vg, truth)
            # a realised distance must not collapse onto a snapped open limit
            project_to_edge_uncertainty(vi)
        except (NotARealization, UnsupportedGeometry):
            continue
        return vi
    raise RuntimeError("could not place disjoint regions; enlarge the box")


def _random_inside(rng: random.Random, r: Region) -> Point:
    if isinstance(r, PointRegion):
        return r.p
    if isinstance(r, Rect):
        return Point(r.x + r.width * rng.uniform(0.02, 0.98), r.y + r.height * rng.uniform(0.02, 0.98))
    rad = r.r * math.sqrt(rng.uniform(0, 0.96))
    ang = rng.uniform(0, 2 * math.pi)
    return Point(r.cx + rad * math.cos(ang), r.cy + rad * math.sin(ang))
