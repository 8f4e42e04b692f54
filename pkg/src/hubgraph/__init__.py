"""Interactive exploration of large attributed graphs through hub abstraction.

A query selects hub vertices, groups the remaining vertices by which hub
pairs they sit between, and summarizes each group with aggregate tables.
The result is a small hub-level graph whose edges carry those summaries
and can be zoomed into recursively.
"""

from .aggregate import AggFunction, AggPlan, Cluster, OpCounts, \
    build_as_plan, execute_plan, saving, shared_component, sn_aggregate
from .generate import GenConfig, generate
from .graph import AttributedGraph, CondensedGraph, GraphLoadError, \
    SubgraphView, condense_scc, load_graph, topological_order, whole_view
from .hubs import HubSet, closeness_centrality, select_by_attribute, \
    top_k_closeness, top_max_degree
from .query import Catalog, GEQuery, HAGraph, QueryError, QuerySyntaxError, \
    execute, parse, zoom_edge, zoom_subset
from .reach import ReachIndex, bounded_distances, build_tc_index
from .tags import Memberships, Tag, compute_tags_bounded, \
    compute_tags_indexed, compute_tags_propagation, edge_tag, \
    extract_path_subgraph, memberships_from_tags

__version__ = "0.1.0"

__all__ = [
    "AggFunction", "AggPlan", "AttributedGraph", "Catalog", "Cluster",
    "CondensedGraph", "GEQuery", "GenConfig", "GraphLoadError", "HAGraph",
    "HubSet", "Memberships", "OpCounts", "QueryError", "QuerySyntaxError",
    "ReachIndex", "SubgraphView", "Tag", "bounded_distances", "build_as_plan",
    "build_tc_index", "closeness_centrality", "compute_tags_bounded",
    "compute_tags_indexed", "compute_tags_propagation", "condense_scc",
    "edge_tag", "execute", "execute_plan", "extract_path_subgraph", "generate",
    "load_graph", "memberships_from_tags", "parse", "saving",
    "select_by_attribute", "shared_component", "sn_aggregate",
    "top_k_closeness", "top_max_degree", "topological_order", "whole_view",
    "zoom_edge", "zoom_subset",
]
