"""Brute-force optimum: the fewest updates that make some tree verifiable.

Verifiability is monotone under narrowing (upper limits only drop, lower
limits only rise), so a set of updates that verifies stays verifying when
more updates are added.  The search below relies on that.
"""
from __future__ import annotations

import itertools
import os
from typing import Iterable

from .errors import InstanceTooLarge
from .graph import Instance, UncertainGraph
from .verify import find_verifiable_tree

DEFAULT_BOUND = 20


def oracle_bound(bound: int | None = None) -> int:
    if bound is not None:
        return bound
    env = os.environ.get("UMST_ORACLE_BOUND")
    return int(env) if env else DEFAULT_BOUND


def _view_of(inst: Instance, view) -> UncertainGraph:
    if view is None:
        return inst.graph
    return getattr(view, "graph", view)


def verifies(inst: Instance, view: UncertainGraph, updates: Iterable[str], method: str = "kruskal") -> bool:
    g = view.narrowed({e: inst.truth[e] for e in updates})
    return find_verifiable_tree(g, method) is not None


def _candidates(inst, view, bound):
    cand = view.nontrivial()
    limit = oracle_bound(bound)
    if len(cand) > limit:
        raise InstanceTooLarge(f"{len(cand)} non-trivial edges exceed the oracle bound {limit}")
    return cand


def opt_updates(inst: Instance, view=None, *, bound: int | None = None, method: str = "kruskal") -> int:
    """Size of a smallest verifying update set (relative to ``view`` if given)."""
    g = _view_of(inst, view)
    cand = _candidates(inst, g, bound)
    for k in range(len(cand) + 1):
        for subset in itertools.combinations(cand, k):
            if verifies(inst, g, subset, method):
                return k
    raise AssertionError("updating every area must verify")


def opt_witness(inst: Instance, view=None, *, bound: int | None = None) -> frozenset[str]:
    """One verifying update set of minimum size."""
    g = _view_of(inst, view)
    cand = _candidates(inst, g, bound)
    for k in range(len(cand) + 1):
        for subset in itertools.combinations(cand, k):
            if verifies(inst, g, subset):
                return frozenset(subset)
    raise AssertionError("updating every area must verify")


def minimal_verifying_sets(inst: Instance, view=None, *, bound: int | None = None,
                           method: str = "kruskal") -> list[frozenset[str]]:
    """All inclusion-minimal verifying update sets, by size then edge order."""
    g = _view_of(inst, view)
    cand = _candidates(inst, g, bound)
    found: list[frozenset[str]] = []
    for k in range(len(cand) + 1):
        for subset in itertools.combinations(cand, k):
            s = frozenset(subset)
            if any(m <= s for m in found):
                continue
            if verifies(inst, g, subset, method):
                found.append(s)
    return found


def is_witness_set(inst: Instance, view, w: Iterable[str], *, bound: int | None = None) -> bool:
    """True iff every verifying update set of ``view`` touches ``w``.

    By monotonicity it is enough to check that updating everything outside
    ``w`` does not verify.
    """
    g = _view_of(inst, view)
    cand = _candidates(inst, g, bound)
    w = set(w)
    return not verifies(inst, g, [e for e in cand if e not in w])
