"""How far from optimal is u-red on random small instances?

Open areas keep the ratio at most 2 for edges and 4 for vertex regions; the
distribution shows most instances are solved optimally.
"""
import numpy as np

from umst.generators import gen_random, gen_random_vertex
from umst.oracle import opt_updates
from umst.ured import run_u_red
from umst.vertex import run_vertex_u_red, vertex_opt

rng = np.random.default_rng(42)
ratios = []
for seed in range(300):
    inst = gen_random(seed, int(rng.integers(3, 8)), max_edges=12, max_nontrivial=10)
    ratios.append(run_u_red(inst).updates / max(opt_updates(inst), 1))
ratios = np.array(ratios)
# ratio 0 marks instances that were verifiable before any update
print(f"edge model, {len(ratios)} instances: {np.sum(ratios == 0)} verified without updates, "
      f"mean ratio of the rest {ratios[ratios > 0].mean():.3f}, max {ratios.max():.2f}")
values, counts = np.unique(np.round(ratios, 2), return_counts=True)
for v, c in zip(values, counts):
    print(f"  {v:5.2f} {'#' * (c // 4)} {c}")

vratios = []
for seed in range(100):
    n = int(rng.integers(3, 7))
    vi = gen_random_vertex(seed, n, int(rng.integers(1, min(4, n) + 1)))
    vratios.append(run_vertex_u_red(vi).updates / max(vertex_opt(vi), 1))
vratios = np.array(vratios)
print(f"\nvertex model, {len(vratios)} instances: mean ratio {vratios.mean():.3f}, max {vratios.max():.2f}")
