"""Shared oracles and helpers: raw-graph BFS membership and brute-force aggregation."""

from collections import deque

import pytest

from hubgraph import AttributedGraph, whole_view


def bfs_reach(graph: AttributedGraph, start: int, forward: bool = True) -> set:
    """Vertex indices reachable from start on the raw graph (incl. start)."""
    seen = {start}
    q = deque([start])
    while q:
        u = q.popleft()
        eids = graph.out_edges[u] if forward else graph.in_edges[u]
        for e in eids:
            v = graph.e_tgt[e] if forward else graph.e_src[e]
            if v not in seen:
                seen.add(v)
                q.append(v)
    return seen


def brute_membership(graph: AttributedGraph, hub_indices: list):
    """Per ordered hub pair (x, y): (vertex index set, edge id set) of G'(x, y).

    Membership straight from the definition: v is in iff x reaches v and v
    reaches y; an edge is in iff its source is reached by x and its target
    reaches y.  Pure BFS on the raw graph, independent of tags/condensation.
    """
    k = len(hub_indices)
    fwd = [bfs_reach(graph, h, True) for h in hub_indices]
    rev = [bfs_reach(graph, h, False) for h in hub_indices]
    out = {}
    for x in range(k):
        for y in range(k):
            if x == y:
                continue
            vset = fwd[x] & rev[y]
            eset = {e for e in range(graph.n_edges)
                    if graph.e_src[e] in fwd[x] and graph.e_tgt[e] in rev[y]}
            out[(x, y)] = (vset, eset)
    return out


def brute_aggregate(graph: AttributedGraph, membership: dict, fn) -> dict:
    """Independent per-subgraph aggregation over raw vertices/edges."""
    out = {}
    for (x, y), (vset, eset) in membership.items():
        table = {}
        if fn.kind == "vertex":
            for i in sorted(vset):
                fn.merge_row(table, fn.vertex_key(graph, i), fn.vertex_value(graph, i))
        else:
            for e in sorted(eset):
                fn.merge_row(table, fn.edge_key(graph, e), fn.edge_value(graph, e))
        if table:
            out[(x, y)] = table
    return out


def tiny_graph(vertices, edges) -> AttributedGraph:
    return AttributedGraph(vertices, edges)


@pytest.fixture
def chain3():
    """1 -> 2 -> 3 with distinct groups and measures."""
    return tiny_graph([(1, 1, 10), (2, 1, 20), (3, 2, 30)],
                      [(1, 2, 1, 5), (2, 3, 2, 7)])
