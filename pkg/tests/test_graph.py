import json

import pytest

from umst.area import Area
from umst.errors import DisconnectedGraph, MalformedGraph, NotARealization, WastedUpdate
from umst.graph import (
    AlgoView,
    Edge,
    Instance,
    Order,
    UncertainGraph,
    UpdateTrace,
    compare_edges,
    dump_instance,
    graph_from_json,
    load_instance,
    make_graph,
    realize,
    update_edge,
)

from util import gadget, triangle, trivial_instance


def test_realize():
    g = triangle()
    assert realize(g, {"a": 1, "b": 6, "c": 8}) == {"a": 1, "b": 6, "c": 8}
    with pytest.raises(NotARealization):
        realize(g, {"a": 1, "b": 3, "c": 8})
    with pytest.raises(NotARealization):
        realize(g, {"a": 1, "b": 6})
    inst = trivial_instance()
    assert realize(inst.graph, inst.truth) == inst.truth


def test_update_sequence():
    inst = gadget()
    view = AlgoView(inst.graph)
    update_edge(view, inst, "c")
    assert view.graph.area("c") == Area.point(8)
    assert view.trace == ["c"]
    update_edge(view, inst, "b")
    assert view.graph.area("b") == Area.point(6)
    assert view.trace == ["c", "b"]
    with pytest.raises(WastedUpdate):
        update_edge(view, inst, "b")


def test_update_from_callable():
    view = AlgoView(triangle())
    update_edge(view, lambda eid, g: "13/2", "b")
    assert view.graph.area("b") == Area.point("6.5")


def test_trace_refuses_repeats():
    t = UpdateTrace(["x"])
    with pytest.raises(WastedUpdate):
        t.append("x")
    assert t.count == 1


def test_compare_edges():
    g = make_graph("pqr", [("e0", "p", "q", Area.open(3, 7)), ("e1", "q", "r", Area.open(5, 9)),
                           ("e2", "p", "r", Area.open(3, 5)), ("e3", "p", "q", Area.open(3, 7))])
    assert compare_edges(g, "e0", "e1") is Order.BEFORE
    assert compare_edges(g, "e2", "e0") is Order.BEFORE
    assert compare_edges(g, "e0", "e3") is Order.EQUAL_LIMITS
    assert compare_edges(g, "e0", "e3", strict=True) is Order.BEFORE
    assert compare_edges(g, "e3", "e0", strict=True) is Order.AFTER


def test_malformed_graphs():
    with pytest.raises(DisconnectedGraph):
        make_graph("pqr", [("e", "p", "q", 1)])
    with pytest.raises(MalformedGraph):
        make_graph("pq", [("e", "p", "p", 1), ("f", "p", "q", 1)])
    with pytest.raises(MalformedGraph):
        make_graph("pq", [("e", "p", "q", 1), ("e", "p", "q", 2)])
    with pytest.raises(MalformedGraph):
        make_graph("pq", [("e", "p", "z", 1)])


def test_parallel_edges_allowed():
    g = make_graph("pq", [("e", "p", "q", 1), ("f", "p", "q", Area.open(0, 2))])
    assert len(g) == 2


def test_narrowed_is_narrowing():
    g = triangle()
    h = g.narrowed({"c": 8})
    assert h.is_narrowing_of(g)
    assert not g.is_narrowing_of(h)


def test_json_roundtrip(tmp_path):
    inst = gadget()
    path = tmp_path / "g.json"
    dump_instance(inst, path)
    again = load_instance(path)
    assert again.graph == inst.graph
    assert again.truth == inst.truth
    data = json.loads(path.read_text())
    assert data["model"] == "edge"


def test_json_errors():
    with pytest.raises(MalformedGraph):
        graph_from_json([])
    with pytest.raises(MalformedGraph):
        graph_from_json({"vertices": ["p"]})
    with pytest.raises(MalformedGraph):
        graph_from_json({"vertices": ["p", "q"], "edges": [{"u": "p", "v": "q"}]})
    data = {"vertices": ["p", "q"], "edges": [{"id": "e", "u": "p", "v": "q",
                                               "area": {"lo": 1, "hi": 2, "lo_open": True}, "true_weight": 1}]}
    g, truth = graph_from_json(data)
    with pytest.raises(NotARealization):
        Instance(g, truth)
