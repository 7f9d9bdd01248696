"""A triangle where one of two updates is wasted, and why no algorithm can avoid it.

Edge a is known to weigh 1, b lies in (3,7) and c in (5,9).  The tree must
contain a, and then either b or c.  Nothing can be decided without an update.
"""
from umst.area import Area
from umst.generators import gadget_adversary, gen_gadget_path
from umst.graph import Instance, make_graph
from umst.oracle import minimal_verifying_sets, opt_updates
from umst.ured import run_u_red
from umst.verify import counterexample, find_verifiable_tree

g = make_graph("vxy", [("a", "x", "y", 1), ("b", "v", "x", Area.open(3, 7)), ("c", "v", "y", Area.open(5, 9))])
print("areas:", {e.id: str(e.area) for e in g.edges})
print("verifiable tree without updates:", find_verifiable_tree(g))

# T = {a, b} is the natural guess but a realization where c is cheaper exists
print("realization breaking {a,b}:", {k: str(v) for k, v in counterexample(g, {"a", "b"}).items()})

inst = Instance(g, {"a": 1, "b": 6, "c": 8})
res = run_u_red(inst)
print("\nu-red updates", res.trace.as_list(), "in", res.runs, "passes; tree", sorted(res.tree))
for line in res.event_lines():
    print("  ", line)
print("optimum:", opt_updates(inst), "via", [sorted(s) for s in minimal_verifying_sets(inst)])

# If b had been revealed first the answer 6 would not settle anything either,
# and an adversary picks c's value so that the other update was the one needed.
print("\nadversary on a path of gadgets:")
for k in (1, 2, 4, 8):
    adv = gadget_adversary()
    path = gen_gadget_path(k)
    res = run_u_red(path, adv)
    print(f"  k={k}: u-red {res.updates:2d} updates, optimum {opt_updates(adv.induced_instance(path))}")
