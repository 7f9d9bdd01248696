"""Minimum spanning trees when edge weights or vertex locations are uncertain."""
from .area import Area, area_contains, area_inf, area_make, area_narrow, area_sup
from .errors import UMSTError
from .graph import AlgoView, Edge, Instance, UncertainGraph, UpdateTrace, make_graph, update_edge
from .oracle import is_witness_set, minimal_verifying_sets, opt_updates
from .ured import run_u_red
from .verify import find_verifiable_tree, is_verified_mst, kruskal
from .vertex import Disk, PointRegion, Rect, VertexGraph, VertexInstance, run_vertex_u_red, vertex_opt

__all__ = [
    "AlgoView", "Area", "Disk", "Edge", "Instance", "PointRegion", "Rect", "UMSTError",
    "UncertainGraph", "UpdateTrace", "VertexGraph", "VertexInstance",
    "area_contains", "area_inf", "area_make", "area_narrow", "area_sup",
    "find_verifiable_tree", "is_verified_mst", "is_witness_set", "kruskal", "make_graph",
    "minimal_verifying_sets", "opt_updates", "run_u_red", "run_vertex_u_red", "update_edge",
    "vertex_opt",
]
