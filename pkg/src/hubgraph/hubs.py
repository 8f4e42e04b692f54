"""Hub selection: top-degree, closeness centrality (static/dynamic), attribute filters."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence


@dataclass
class HubSet:
    """Ordered hub list (root vertex indices) with per-hub provenance.

    provenance[i] is "selected" for sigma-chosen hubs, "anchor" for vertices
    carried in from the subgraph-of-interest arguments.  Duplicates keep
    their first position, but "anchor" always wins the provenance: a vertex
    that frames the subgraph of interest stays an anchor even when the
    selector picks it again.
    """

    indices: list[int] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)

    def add(self, index: int, provenance: str) -> None:
        if index not in self.indices:
            self.indices.append(index)
            self.provenance.append(provenance)
        elif provenance == "anchor":
            self.provenance[self.indices.index(index)] = "anchor"

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def total_degree(view, i: int) -> int:
    return len(view.out_edge_ids(i)) + len(view.in_edge_ids(i))


def top_max_degree(view, k: int, mode: str = "total") -> HubSet:
    """k maximum-degree vertices of the view; ties go to the smaller vid.

    Degree counts both directions by default (mode="out" restricts to
    out-degree).  k beyond |V| returns everything.
    """
    root = view.root
    deg: Callable[[int], int] = (
        (lambda i: len(view.out_edge_ids(i))) if mode == "out"
        else (lambda i: total_degree(view, i)))
    ranked = sorted(view.vertex_indices(), key=lambda i: (-deg(i), root.vids[i]))
    hs = HubSet()
    for i in ranked[:max(k, 0)]:
        hs.add(i, "selected")
    return hs


def closeness_centrality(view, i: int) -> float:
    """Reachable-count over summed hop distances; 0 when nothing is reachable."""
    count = 0
    total = 0
    dist = {i: 0}
    q = deque([i])
    while q:
        u = q.popleft()
        for v in view.out_neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                count += 1
                total += dist[v]
                q.append(v)
    return count / total if total else 0.0


def compute_closeness_all(view) -> dict[int, float]:
    return {i: closeness_centrality(view, i) for i in view.vertex_indices()}


def top_k_closeness(view, k: int, mode: str = "dynamic",
                    static_values: Optional[dict[int, float]] = None) -> HubSet:
    """Top-k by closeness, descending, ties by vid.

    Static mode ranks by values precomputed on the root graph (they never
    change across navigation); dynamic mode recomputes within the view.
    """
    root = view.root
    if mode == "static":
        if static_values is None:
            raise ValueError("static mode needs precomputed values")
        value = lambda i: static_values[i]
    else:
        value = lambda i: closeness_centrality(view, i)
    ranked = sorted(view.vertex_indices(), key=lambda i: (-value(i), root.vids[i]))
    hs = HubSet()
    for i in ranked[:max(k, 0)]:
        hs.add(i, "selected")
    return hs


def select_by_attribute(view, attr: str, op: str, value) -> HubSet:
    """All view vertices whose attribute satisfies the comparison, in vid order.

    op is "eq" or "above"; unknown attribute names raise KeyError.
    """
    root = view.root
    hs = HubSet()
    for i in view.vertex_indices():
        got = root.vertex_attr(i, attr)  # raises KeyError on unknown attr
        if op == "eq":
            ok = got == value or (got is not None and str(got) == str(value))
        elif op == "above":
            ok = got is not None and got > value
        else:
            raise ValueError(f"unknown comparison {op!r}")
        if ok:
            hs.add(i, "selected")
    return hs
