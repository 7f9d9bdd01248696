"""Uncertain vertex locations: four reveals where one would do.

Four thin open rectangles A, B, C, D.  Distances AB range over (7,11) and CD
over (4,8); chains of known points make the rest of the tree fixed, so the only
question is whether AB or CD is the cheaper connection.
"""
import numpy as np

from umst.generators import gen_vertex_lb
from umst.vertex import distance_limits, edge_id, run_vertex_u_red, vertex_minimal_verifying_sets, vertex_opt

vg, adv = gen_vertex_lb(1)
view = vg.project()
for a, b in (("A0", "B0"), ("C0", "D0")):
    print(f"d({a[0]},{b[0]}) area {view.area(edge_id(a, b))}")
print(len(vg.vertices), "vertices,", len(view), "edges,", len(view.nontrivial()), "uncertain")

# sampled distances stay strictly inside the projected area
rng = np.random.default_rng(0)
ra, rb = vg.regions["A0"], vg.regions["B0"]
d = np.hypot(*(ra.sample(rng, 100_000) - rb.sample(rng, 100_000)).T)
lo, hi = distance_limits(ra, rb)
print(f"sampled AB distances in [{d.min():.4f}, {d.max():.4f}] inside ({lo:g}, {hi:g})")

res = run_vertex_u_red(vg, adv)
print("\nreveals:", res.trace.as_list())
for name in "ABCD":
    p = adv.revealed[f"{name}0"]
    print(f"  {name} at x={p.x:.2f}")
vi = adv.induced_instance()
print("optimum:", vertex_opt(vi), "using", [sorted(s) for s in vertex_minimal_verifying_sets(vi)])

vg, adv = gen_vertex_lb(2)
res = run_vertex_u_red(vg, adv)
print(f"\ntwo copies: {res.updates} reveals, optimum {vertex_opt(adv.induced_instance())}")
