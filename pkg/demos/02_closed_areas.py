"""With closed or half-open areas the factor 2 is lost.

Two families where u-red (and in fact any algorithm) can be made to update
every uncertain edge while one update suffices.
"""
from umst.generators import gen_half_open_cycle, gen_star
from umst.oracle import opt_updates
from umst.ured import run_u_red

print("star: k cross edges with area [2,4], one of them weighs 2, the rest 3")
print(f"{'k':>3} {'worst pos':>9} {'updates':>8} {'OPT':>4}")
for k in (3, 5, 8, 12):
    runs = [(run_u_red(gen_star(k, pos)).updates, pos) for pos in range(1, k + 1)]
    worst, pos = max(runs)
    print(f"{k:>3} {pos:>9} {worst:>8} {opt_updates(gen_star(k, pos), bound=30):>4}")

print("\ncycle of k edges with area (2,4], one weighs 4, the rest 3")
print(f"{'k':>3} {'worst pos':>9} {'updates':>8} {'OPT':>4}")
for k in (4, 6, 10):
    runs = [(run_u_red(gen_half_open_cycle(k, pos)).updates, pos) for pos in range(1, k + 1)]
    worst, pos = max(runs)
    print(f"{k:>3} {pos:>9} {worst:>8} {opt_updates(gen_half_open_cycle(k, pos)):>4}")

# the closed star keeps its trace short: each restart settles one more cross edge
res = run_u_red(gen_star(3, 3))
print("\nstar k=3 trace:", res.trace.as_list(), "pairs:", [p.updated for p in res.pairs])
