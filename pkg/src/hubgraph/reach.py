"""Reachability over the condensed DAG: transitive-closure bitsets and bounded BFS."""

from __future__ import annotations

from collections import deque

from .graph import CondensedGraph, topological_order

DEFAULT_SIZE_CAP = 100_000


class ReachIndex:
    """Transitive closure as one Python-int bitset per super-vertex.

    Bit (u, v) is set iff a directed path u ~> v exists; reflexive bits are
    always set.  Immutable after build; probes are constant-time bit tests.
    """

    def __init__(self, closure: list[int]):
        self._closure = closure
        self.n = len(closure)

    def reaches(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"vertex id out of range: ({u}, {v})")
        return (self._closure[u] >> v) & 1 == 1

    def reach_set(self, u: int) -> int:
        """Bitset of everything u reaches (including itself)."""
        return self._closure[u]


def build_tc_index(cg: CondensedGraph, size_cap: int = DEFAULT_SIZE_CAP) -> ReachIndex:
    """Reverse-topological bitset OR-propagation over the condensed DAG."""
    n = cg.n_super
    if n > size_cap:
        raise ValueError(
            f"refusing to build transitive closure for {n} super-vertices "
            f"(cap {size_cap})")
    closure = [0] * n
    for s in reversed(topological_order(cg)):
        bits = 1 << s
        for t in cg.out_adj[s]:
            bits |= closure[t]
        closure[s] = bits
    return ReachIndex(closure)


def reaches(idx: ReachIndex, u: int, v: int) -> bool:
    return idx.reaches(u, v)


def bounded_distances(cg: CondensedGraph, source: int, h: int,
                      direction: str = "forward") -> dict[int, int]:
    """BFS hop distances from `source`, truncated at h hops.

    direction="reverse" walks edges backwards (distances *to* source).
    """
    if h < 0:
        raise ValueError("hop budget must be >= 0")
    adj = cg.out_adj if direction == "forward" else cg.in_adj
    dist = {source: 0}
    frontier = deque([source])
    while frontier:
        u = frontier.popleft()
        d = dist[u]
        if d == h:
            continue
        for v in adj[u]:
            if v not in dist:
                dist[v] = d + 1
                frontier.append(v)
    return dist
