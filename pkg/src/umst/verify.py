"""Deciding whether a spanning tree is minimum for every realization."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .area import Area
from .errors import InvalidTree, NoSpanningTree
from .graph import UncertainGraph, tree_path

SpanningTree = frozenset


class _DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def kruskal(g: UncertainGraph, weights: Mapping[str, Fraction] | None = None) -> SpanningTree:
    """Minimum spanning tree for exact weights, ties broken by edge index.

    Without ``weights`` every area of ``g`` must be trivial and its point is used.
    """
    if weights is None:
        if any(not e.area.is_trivial for e in g.edges):
            raise ValueError("kruskal needs exact weights; graph has non-trivial areas")
        weights = {e.id: e.area.lo for e in g.edges}
    ds = _DisjointSet(g.vertices)
    order = sorted(g.edge_ids, key=lambda eid: (weights[eid], g.index(eid)))
    tree = []
    for eid in order:
        u, v = g.endpoints(eid)
        if ds.union(u, v):
            tree.append(eid)
    if len(tree) != len(g.vertices) - 1:
        raise NoSpanningTree("graph is disconnected")
    return frozenset(tree)


def tree_weight(tree: Iterable[str], weights: Mapping[str, Fraction]) -> Fraction:
    return sum((weights[e] for e in tree), Fraction(0))


def _tree_adjacency(g: UncertainGraph, tree) -> dict:
    tree = frozenset(tree)
    unknown = [e for e in tree if e not in g]
    if unknown:
        raise InvalidTree(f"tree uses unknown edges {sorted(unknown)}")
    if len(tree) != len(g.vertices) - 1:
        raise InvalidTree(f"tree has {len(tree)} edges, expected {len(g.vertices) - 1}")
    ds = _DisjointSet(g.vertices)
    adj = {v: [] for v in g.vertices}
    for eid in tree:
        u, v = g.endpoints(eid)
        if not ds.union(u, v):
            raise InvalidTree("tree contains a cycle")
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    return adj


def is_spanning_tree(g: UncertainGraph, tree) -> bool:
    try:
        _tree_adjacency(g, tree)
    except InvalidTree:
        return False
    return True


def violations(g: UncertainGraph, tree) -> Iterator[tuple[str, str]]:
    """Yield ``(p, f)`` pairs where tree edge ``p`` may outweigh non-tree edge ``f``."""
    adj = _tree_adjacency(g, tree)
    tree = frozenset(tree)
    for e in g.edges:
        if e.id in tree:
            continue
        lf = e.area.lo
        for p in tree_path(adj, e.u, e.v):
            if g.area(p).hi > lf:
                yield p, e.id


def is_verified_mst(g: UncertainGraph, tree) -> bool:
    """True iff every tree path edge's upper limit is at most the lower limit of the
    non-tree edge closing the cycle; this is exactly "MST of every realization"."""
    for _ in violations(g, tree):
        return False
    return True


def always_maximal(g: UncertainGraph, cycle: Iterable[str], e: str) -> bool:
    cycle = list(cycle)
    if e not in cycle:
        raise ValueError(f"edge {e!r} is not on the cycle")
    lo = g.area(e).lo
    return all(lo >= g.area(c).hi for c in cycle if c != e)


def spanning_trees(g: UncertainGraph) -> Iterator[SpanningTree]:
    """All spanning trees by brute force over edge subsets (small graphs only)."""
    need = len(g.vertices) - 1
    ids = g.edge_ids
    for combo in itertools.combinations(ids, need):
        ds = _DisjointSet(g.vertices)
        ok = True
        for eid in combo:
            u, v = g.endpoints(eid)
            if not ds.union(u, v):
                ok = False
                break
        if ok:
            yield frozenset(combo)


def find_verifiable_tree(g: UncertainGraph, method: str = "kruskal") -> SpanningTree | None:
    """A tree that is an MST of every realization of ``g``, or None.

    ``method="kruskal"`` runs one update-free pass of u-red; ``"exhaustive"``
    tries every spanning tree.
    """
    if method == "kruskal":
        from .ured import red_pass

        outcome = red_pass(g)
        return outcome.tree if outcome.stuck is None else None
    if method == "exhaustive":
        for t in spanning_trees(g):
            if is_verified_mst(g, t):
                return t
        return None
    raise ValueError(f"unknown method {method!r}")


def _filler(area: Area) -> Fraction:
    return area.lo if area.is_trivial else area.midpoint()


def counterexample(g: UncertainGraph, tree) -> dict[str, Fraction] | None:
    """A realization in which ``tree`` is not minimum, or None if it is verified.

    The offending tree edge is pushed towards its upper limit and the non-tree
    edge towards its lower limit, each by a quarter of the smaller of its own
    width and the overlap, so the values stay inside open areas.
    """
    for p, f in violations(g, tree):
        ap, af = g.area(p), g.area(f)
        gap = ap.hi - af.lo
        weights = {e.id: _filler(e.area) for e in g.edges}
        if ap.is_trivial or not ap.hi_open:
            wp = ap.hi
        else:
            wp = ap.hi - min(ap.width, gap) / 4
        if af.is_trivial or not af.lo_open:
            wf = af.lo
        else:
            wf = af.lo + min(af.width, gap) / 4
        weights[p], weights[f] = wp, wf
        return weights
    return None


def sample_realization(g: UncertainGraph, rng: random.Random, grid: int = 64) -> dict[str, Fraction]:
    """Random rational realization on a grid of ``grid`` steps per area."""
    out = {}
    for e in g.edges:
        a = e.area
        if a.is_trivial:
            out[e.id] = a.lo
            continue
        lo_k = 1 if a.lo_open else 0
        hi_k = grid - 1 if a.hi_open else grid
        out[e.id] = a.lo + a.width * Fraction(rng.randint(lo_k, hi_k), grid)
    return out
