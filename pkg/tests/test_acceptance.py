"""End-to-end acceptance checks.

Each check prints one ``criterion N: PASS|FAIL`` line (also collected into the
pytest terminal summary).  Run directly with ``python3 tests/test_acceptance.py``
to get only those lines.
"""
import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from umst.area import Area
from umst.generators import (
    gadget_adversary,
    gen_gadget_path,
    gen_half_open_cycle,
    gen_random,
    gen_random_vertex,
    gen_star,
    gen_vertex_lb,
)
from umst.graph import Edge, UncertainGraph
from umst.oracle import is_witness_set, opt_updates
from umst.ured import run_u_red
from umst.verify import (
    counterexample,
    find_verifiable_tree,
    is_verified_mst,
    kruskal,
    sample_realization,
    tree_weight,
)
from umst.vertex import TAU, edge_id, run_vertex_u_red, vertex_opt

RESULTS: list[str] = []


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


# -- criterion 1 and 3 share the same 500 runs ---------------------------------

SWEEP_SEEDS = range(500)


def sweep_instance(seed):
    rng = random.Random(10_000 + seed)
    n = rng.randint(3, 7)
    return gen_random(seed, n, edge_prob=rng.choice([0.3, 0.5, 0.8]), trivial_frac=rng.choice([0.1, 0.3, 0.5]),
                      max_edges=12, max_nontrivial=10, kinds=("open",))


_sweep_cache = {}


def sweep():
    if not _sweep_cache:
        rows = []
        for seed in SWEEP_SEEDS:
            inst = sweep_instance(seed)
            res = run_u_red(inst)
            rows.append((seed, inst, res, opt_updates(inst)))
        _sweep_cache["rows"] = rows
    return _sweep_cache["rows"]


def check_competitive_sweep():
    start = time.perf_counter()
    rows = sweep()
    bad = [(seed, res.updates, opt) for seed, _, res, opt in rows if res.updates > 2 * opt]
    worst = max(res.updates / max(opt, 1) for _, _, res, opt in rows)
    nontrivial = max(len(inst.graph.nontrivial()) for _, inst, _, _ in rows)
    edges = max(len(inst.graph) for _, inst, _, _ in rows)
    return report(1, not bad and len(rows) == 500,
                  f"{len(rows)} instances (<= {edges} edges, <= {nontrivial} non-trivial), "
                  f"violations={len(bad)}, worst ratio={worst:.2f}, {time.perf_counter() - start:.1f}s")


def check_gadget_tightness():
    start = time.perf_counter()
    details, ok = [], True
    for k in (1, 3, 5):
        adv = gadget_adversary()
        g = gen_gadget_path(k)
        res = run_u_red(g, adv)
        opt = opt_updates(adv.induced_instance(g))
        ok &= res.updates == 2 * k and opt == k
        details.append(f"k={k}: {res.updates}/{opt}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5
    return report(2, ok, f"{', '.join(details)} (updates/OPT), {elapsed:.2f}s")


def check_witness_pairs():
    pairs = bad = 0
    for seed, inst, res, _ in sweep():
        for p in res.pairs:
            pairs += 1
            if not is_witness_set(inst, p.view, {p.f, p.g}):
                bad += 1
    return report(3, bad == 0 and pairs > 0, f"{pairs} updated pairs checked, violations={bad}")


def check_closed_area_families():
    start = time.perf_counter()
    details, ok = [], True
    for k in (3, 5, 8):
        counts, opts = [], set()
        for pos in range(1, k + 1):
            inst = gen_star(k, pos)
            counts.append(run_u_red(inst).updates)
            opts.add(opt_updates(inst))
        ok &= max(counts) >= k and opts == {1}
        details.append(f"star k={k}: max={max(counts)} OPT={sorted(opts)}")
    for k in (4, 6):
        counts, opts = [], set()
        for pos in range(1, k + 1):
            inst = gen_half_open_cycle(k, pos)
            counts.append(run_u_red(inst).updates)
            opts.add(opt_updates(inst))
        ok &= max(counts) == k and opts == {1}
        details.append(f"cycle k={k}: max={max(counts)} OPT={sorted(opts)}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    return report(4, ok, f"{'; '.join(details)}, {elapsed:.2f}s")


def check_verification_soundness():
    rng = random.Random(5)
    kinds = ("open", "closed", "closed-open", "open-closed")
    true_cases = false_cases = failures = 0
    seed = 0
    while true_cases < 50 or false_cases < 50:
        seed += 1
        inst = gen_random(seed, rng.randint(3, 7), trivial_frac=0.4, max_edges=12, kinds=kinds)
        # the final view of u-red is a narrowing with a verifiable tree; the
        # initial graph with its midpoint Kruskal tree is usually not verified
        res = run_u_red(inst)
        mid = kruskal(inst.graph, {e.id: e.area.midpoint() if not e.area.is_trivial else e.area.lo
                                   for e in inst.graph.edges})
        for g, tree in ((res.graph, res.tree), (inst.graph, mid)):
            if is_verified_mst(g, tree):
                if true_cases >= 50 or not g.nontrivial():
                    continue
                true_cases += 1
                for _ in range(1000):
                    w = sample_realization(g, rng)
                    if tree_weight(tree, w) != tree_weight(kruskal(g, w), w):
                        failures += 1
                        break
            else:
                if false_cases >= 50:
                    continue
                false_cases += 1
                w = counterexample(g, tree)
                inside = w is not None and all(w[e.id] in e.area for e in g.edges)
                if not inside or tree_weight(tree, w) <= tree_weight(kruskal(g, w), w):
                    failures += 1
    return report(5, failures == 0,
                  f"{true_cases} verified trees x 1000 samples, {false_cases} counterexamples, failures={failures}")


def _random_area(rng):
    kind = rng.choice(["trivial", "open", "closed", "closed-open", "open-closed"])
    lo = rng.randint(0, 4)
    if kind == "trivial":
        return Area.point(lo)
    hi = lo + rng.randint(1, 3)
    flags = {"open": (True, True), "closed": (False, False),
             "closed-open": (False, True), "open-closed": (True, False)}[kind]
    return Area(Fraction(lo), Fraction(hi), *flags)


def check_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(6)
    graphs = [g for g in nx.graph_atlas_g() if 2 <= g.number_of_nodes() <= 5 and nx.is_connected(g)]
    checks = disagree = 0
    for nxg in graphs:
        for _ in range(200):
            edges = [Edge(f"e{i}", str(u), str(v), _random_area(rng)) for i, (u, v) in enumerate(nxg.edges())]
            g = UncertainGraph([str(v) for v in nxg.nodes()], edges)
            fast = find_verifiable_tree(g, "kruskal")
            slow = find_verifiable_tree(g, "exhaustive")
            checks += 1
            if (fast is None) != (slow is None) or (fast is not None and not is_verified_mst(g, fast)):
                disagree += 1
    return report(6, disagree == 0,
                  f"{len(graphs)} connected graphs x 200 area assignments = {checks} checks, "
                  f"disagreements={disagree}, {time.perf_counter() - start:.1f}s")


def check_vertex_tightness():
    start = time.perf_counter()
    details, ok = [], True
    for copies in (1, 2):
        vg, adv = gen_vertex_lb(copies)
        view = vg.project()
        for j in range(copies):
            for (a, b), (lo, hi) in (((f"A{j}", f"B{j}"), (7, 11)), ((f"C{j}", f"D{j}"), (4, 8))):
                area = view.area(edge_id(a, b))
                ok &= abs(float(area.lo) - lo) <= TAU and abs(float(area.hi) - hi) <= TAU
                ok &= area.lo_open and area.hi_open
        res = run_vertex_u_red(vg, adv)
        opt = vertex_opt(adv.induced_instance())
        ok &= res.updates == 4 * copies and opt == copies
        details.append(f"copies={copies}: {res.updates}/{opt}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    return report(7, ok, f"{', '.join(details)} (vertex updates/OPT), areas (7,11) and (4,8), {elapsed:.1f}s")


def check_vertex_sweep():
    start = time.perf_counter()
    rng = random.Random(8)
    bad = []
    worst = 0.0
    for seed in range(200):
        n = rng.randint(3, 6)
        vi = gen_random_vertex(seed, n, rng.randint(1, min(4, n)))
        res = run_vertex_u_red(vi)
        opt = vertex_opt(vi)
        worst = max(worst, res.updates / max(opt, 1))
        if res.updates > 4 * opt:
            bad.append(seed)
    return report(8, not bad, f"200 instances, violations={len(bad)}, worst ratio={worst:.2f}, "
                              f"{time.perf_counter() - start:.1f}s")


def _degenerate_instances():
    for k in (3, 5, 8):
        for pos in range(1, k + 1):
            yield gen_star(k, pos)
            yield gen_star(k, pos, kind="closed-open")
    for k in (3, 4, 6):
        for pos in [None] + list(range(1, k + 1)):
            yield gen_half_open_cycle(k, pos)
            yield gen_half_open_cycle(k, pos, kind="closed")
    yield gen_star(4, 2, complete_bipartite=True)
    for seed in range(200):
        yield gen_random(seed, 6, max_edges=12, kinds=("closed", "closed-open", "open-closed"))


def check_degenerate_termination():
    count = bad = 0
    for inst in _degenerate_instances():
        count += 1
        res = run_u_red(inst)
        truth_tree = kruskal(inst.graph, inst.truth)
        if (not is_verified_mst(res.graph, res.tree)
                or tree_weight(res.tree, inst.truth) != tree_weight(truth_tree, inst.truth)):
            bad += 1
    return report(9, bad == 0, f"{count} closed/half-open instances terminated, unverified={bad}")


CHECKS = [
    check_competitive_sweep,
    check_gadget_tightness,
    check_witness_pairs,
    check_closed_area_families,
    check_verification_soundness,
    check_oracle_equivalence,
    check_vertex_tightness,
    check_vertex_sweep,
    check_degenerate_termination,
]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    for check in CHECKS:
        check()
