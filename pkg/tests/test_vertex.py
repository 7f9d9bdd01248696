import itertools
import math
import random

import numpy as np
import pytest

from umst.area import Area
from umst.errors import MalformedGraph, NotARealization, UnsupportedGeometry
from umst.generators import gen_random_vertex, gen_vertex_lb
from umst.verify import find_verifiable_tree, is_verified_mst
from umst.vertex import (
    TAU,
    Disk,
    Point,
    PointRegion,
    Rect,
    VertexGraph,
    VertexInstance,
    distance_limits,
    dump_vertex_instance,
    edge_id,
    load_vertex_instance,
    point_region,
    project_to_edge_uncertainty,
    region_distance_area,
    run_vertex_u_red,
    snap,
    vertex_is_witness_set,
    vertex_minimal_verifying_sets,
    vertex_opt,
)


def close(area, lo, hi):
    return abs(float(area.lo) - lo) <= TAU and abs(float(area.hi) - hi) <= TAU


def test_point_distance_is_exact():
    assert region_distance_area(point_region(0, 0), point_region(3, 4)) == Area.point(5)


def test_thin_rectangles():
    thin = 1e-6
    a = Rect(0, -thin, 2, thin)
    assert close(region_distance_area(a, Rect(9, -thin, 2, thin)), 7, 11)
    assert close(region_distance_area(a, Rect(6, -thin, 2, thin)), 4, 8)
    assert region_distance_area(a, Rect(9, -thin, 2, thin)).is_open


def test_disk_limits():
    lo, hi = distance_limits(Disk(0, 0, 1), Disk(5, 0, 2))
    assert (lo, hi) == (2, 8)
    lo, hi = distance_limits(Disk(0, 0, 1), point_region(0, 3))
    assert (lo, hi) == (2, 4)
    lo, hi = distance_limits(Rect(2, -1, 2, 2), Disk(0, 0, 1))
    assert lo == pytest.approx(1) and hi == pytest.approx(math.hypot(4, 1) + 1)


def test_overlapping_closures_rejected():
    with pytest.raises(UnsupportedGeometry):
        region_distance_area(Rect(0, 0, 1, 1), Rect(1, 0, 1, 1))
    with pytest.raises(UnsupportedGeometry):
        Rect(0, 0, 0, 1)


def test_snap_is_monotone():
    xs = sorted(random.Random(1).uniform(0, 20) for _ in range(1000))
    snapped = [snap(x) for x in xs]
    assert snapped == sorted(snapped)
    assert all(abs(float(s) - x) <= TAU for s, x in zip(snapped, xs))


def test_squares_ten_apart_by_sampling():
    side = 1.0
    a = Rect(-side / 2, -side / 2, side, side)
    b = Rect(10 - side / 2, -side / 2, side, side)
    lo, hi = distance_limits(a, b)
    assert lo == pytest.approx(10 - side)
    assert hi == pytest.approx(math.hypot(10 + side, side))
    rng = np.random.default_rng(0)
    p, q = a.sample(rng, 100_000), b.sample(rng, 100_000)
    d = np.hypot(*(p - q).T)
    assert np.all((d > lo) & (d < hi))
    # both limits are approached from inside the open squares
    for t in (1e-2, 1e-3, 1e-4):
        near = Point(a.x1 - t, 0).dist(Point(b.x + t, 0))
        far = Point(a.x + t, a.y + t).dist(Point(b.x1 - t, b.y1 - t))
        assert lo < near < lo + 3 * t and hi - 3 * t < far < hi
    assert near - lo < 1e-3 and hi - far < 1e-3


def test_disk_sampling_containment():
    a, b = Disk(0, 0, 1), Disk(4, 1, 0.5)
    lo, hi = distance_limits(a, b)
    rng = np.random.default_rng(1)
    d = np.hypot(*(a.sample(rng, 100_000) - b.sample(rng, 100_000)).T)
    assert np.all((d > lo) & (d < hi))
    assert d.min() - lo < 0.1 and hi - d.max() < 0.1


def trivial_vertex_instance():
    pts = {"p": (0, 0), "q": (3, 4), "r": (6, 0), "s": (3, -1)}
    vg = VertexGraph(pts, {v: point_region(*xy) for v, xy in pts.items()})
    return VertexInstance(vg, pts)


def test_all_trivial_projection():
    vi = trivial_vertex_instance()
    inst = project_to_edge_uncertainty(vi)
    assert not inst.graph.nontrivial()
    assert inst.truth[edge_id("p", "q")] == 5
    res = run_vertex_u_red(vi)
    assert res.updates == 0
    assert vertex_opt(vi) == 0


def test_location_outside_region():
    vg = VertexGraph("pq", {"p": point_region(0, 0), "q": Rect(2, 0, 1, 1)})
    with pytest.raises(NotARealization):
        VertexInstance(vg, {"p": (0, 0), "q": (5, 5)})
    with pytest.raises(NotARealization):
        VertexInstance(vg, {"p": (0, 0)})


def test_json_roundtrip(tmp_path):
    vi = gen_random_vertex(3, 5, 3)
    dump_vertex_instance(vi, tmp_path / "v.json")
    again = load_vertex_instance(tmp_path / "v.json")
    assert again.truth == vi.truth
    assert again.graph.regions == vi.graph.regions


def test_region_errors():
    from umst.vertex import region_from_json

    with pytest.raises(MalformedGraph):
        region_from_json({"kind": "hexagon"})
    with pytest.raises(MalformedGraph):
        region_from_json({"kind": "rect", "x": 0})


def test_lower_bound_areas():
    vg, _ = gen_vertex_lb(1)
    view = vg.project()
    assert close(view.area(edge_id("A0", "B0")), 7, 11)
    assert close(view.area(edge_id("C0", "D0")), 4, 8)


def test_lower_bound_against_u_red():
    vg, adv = gen_vertex_lb(1)
    res = run_vertex_u_red(vg, adv)
    assert res.trace == ["A0", "B0", "C0", "D0"]
    vi = adv.induced_instance()
    assert vertex_opt(vi) == 1
    assert is_verified_mst(res.graph, res.tree)


@pytest.mark.parametrize("order", list(itertools.permutations("ABCD")))
def test_lower_bound_any_order(order):
    vg, adv = gen_vertex_lb(1)
    regions = dict(vg.regions)
    for i, name in enumerate(order):
        v = f"{name}0"
        regions[v] = PointRegion(adv.reveal(v, regions))
        if i < 3:
            assert find_verifiable_tree(vg.project(regions)) is None, f"settled after {order[:i + 1]}"
    vi = adv.induced_instance()
    assert vertex_opt(vi) == 1
    # the last vertex alone settles the tree
    assert vertex_minimal_verifying_sets(vi)[0] == {f"{order[-1]}0"}


@pytest.mark.parametrize("seed", range(25))
def test_random_within_four_times_opt(seed):
    n = 3 + seed % 4
    vi = gen_random_vertex(seed, n, min(1 + seed % 5, n))
    res = run_vertex_u_red(vi)
    assert res.updates <= 4 * vertex_opt(vi)
    assert is_verified_mst(res.graph, res.tree)


def test_revealed_endpoints_are_witness_sets():
    checked = 0
    for seed in range(60):
        vi = gen_random_vertex(seed, 5, 4)
        res = run_vertex_u_red(vi)
        for pair in res.pairs:
            ends = set(pair.view.endpoints(pair.f)) | set(pair.view.endpoints(pair.g))
            assert vertex_is_witness_set(vi, pair.regions, ends)
            checked += 1
    assert checked > 0
