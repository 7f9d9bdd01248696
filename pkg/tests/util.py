"""Small shared builders for the tests."""
from umst.area import Area
from umst.graph import Instance, make_graph


def triangle():
    """The single gadget: a = {1}, b = (3,7), c = (5,9)."""
    return make_graph("vxy", [("a", "x", "y", 1), ("b", "v", "x", Area.open(3, 7)),
                              ("c", "v", "y", Area.open(5, 9))])


def gadget(b=6, c=8):
    return Instance(triangle(), {"a": 1, "b": b, "c": c})


def trivial_instance():
    g = make_graph("pqrs", [("e1", "p", "q", 2), ("e2", "q", "r", 3), ("e3", "r", "s", 1),
                            ("e4", "s", "p", 5), ("e5", "p", "r", 3)])
    return Instance(g, {e.id: e.area.lo for e in g.edges})
