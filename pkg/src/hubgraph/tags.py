"""Membership tags: which induced hub-pair subgraphs each vertex/edge belongs to."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import CondensedGraph, SubgraphView, topological_order
from .reach import ReachIndex, bounded_distances


@dataclass(frozen=True)
class Tag:
    """Pair of hub-index bitsets: S = hubs reaching the element, R = hubs it reaches.

    The Cartesian product of S and R (minus same-hub pairs) enumerates the
    induced subgraphs the element belongs to.
    """

    S: int
    R: int

    @staticmethod
    def from_hubs(s_hubs: Iterable[int], r_hubs: Iterable[int]) -> "Tag":
        s = r = 0
        for i in s_hubs:
            s |= 1 << i
        for i in r_hubs:
            r |= 1 << i
        return Tag(s, r)

    @property
    def cardinality(self) -> int:
        """Number of distinct ordered hub pairs (x, y), x != y, in S x R."""
        return self.S.bit_count() * self.R.bit_count() - (self.S & self.R).bit_count()

    def pairset(self, k: int) -> int:
        """Bitset over ordered pairs, bit x*k + y for x in S, y in R, x != y."""
        ps = 0
        s, r = self.S, self.R
        x = 0
        while s >> x:
            if (s >> x) & 1:
                row = r & ~(1 << x)
                ps |= row << (x * k)
            x += 1
        return ps

    def intersect(self, other: "Tag") -> "Tag":
        return Tag(self.S & other.S, self.R & other.R)

    def __repr__(self):
        fmt = lambda b: "<" + ",".join(str(i) for i in bits(b)) + ">"
        return fmt(self.S) + fmt(self.R)


def bits(bitset: int) -> Iterable[int]:
    """Indices of set bits, ascending."""
    i = 0
    while bitset:
        if bitset & 1:
            yield i
        bitset >>= 1
        i += 1


def pairs_of(pairset: int, k: int):
    """Decode a pair bitset into (x, y) hub-index pairs."""
    for b in bits(pairset):
        yield divmod(b, k)


def compute_tags_indexed(cg: CondensedGraph, hub_supers: Sequence[int],
                         idx: ReachIndex) -> list[Tag]:
    """Per super-vertex tag via 2k reachability probes each."""
    for s in hub_supers:
        if not 0 <= s < cg.n_super:
            raise ValueError(f"hub super-vertex {s} not in graph")
    n = cg.n_super
    tags = []
    for v in range(n):
        s_bits = r_bits = 0
        for i, h in enumerate(hub_supers):
            if idx.reaches(h, v):
                s_bits |= 1 << i
            if idx.reaches(v, h):
                r_bits |= 1 << i
        tags.append(Tag(s_bits, r_bits))
    return tags


def compute_tags_propagation(cg: CondensedGraph, hub_supers: Sequence[int]) -> list[Tag]:
    """Index-free variant: S pushed along topological order, R in reverse.

    Bit-identical to compute_tags_indexed.
    """
    n = cg.n_super
    own = [0] * n
    for i, h in enumerate(hub_supers):
        own[h] |= 1 << i
    order = topological_order(cg)
    s_bits = list(own)
    for v in order:
        for w in cg.out_adj[v]:
            s_bits[w] |= s_bits[v]
    r_bits = list(own)
    for v in reversed(order):
        for w in cg.in_adj[v]:
            r_bits[w] |= r_bits[v]
    return [Tag(s, r) for s, r in zip(s_bits, r_bits)]


def edge_tag(tags: Sequence[Tag], s: int, t: int) -> Tag:
    """Tag of an edge (s, t): source's S concatenated with target's R."""
    return Tag(tags[s].S, tags[t].R)


class Memberships:
    """Uniform subgraph-membership for vertices and edges of a condensed graph.

    Holds one pair-bitset per super-vertex plus a rule for edges, so the
    aggregation layer works identically for plain and hop-bounded grouping.
    """

    def __init__(self, k: int, vertex_pairs: list[int], tags: Optional[list[Tag]],
                 edge_pair_fn):
        self.k = k
        self.vertex_pairs = vertex_pairs
        self.tags = tags  # None in hop-bounded mode (memberships not rectangles)
        self._edge_pair_fn = edge_pair_fn

    def edge_pairs(self, s: int, t: int) -> int:
        return self._edge_pair_fn(s, t)


def memberships_from_tags(tags: Sequence[Tag], k: int) -> Memberships:
    vertex_pairs = [t.pairset(k) for t in tags]
    # the edge pairset depends only on the (source S, target R) rectangle,
    # which takes few distinct values across a graph, so memoize on it
    cache: dict[tuple[int, int], int] = {}

    def edge_pair_fn(s, t):
        key = (tags[s].S, tags[t].R)
        ps = cache.get(key)
        if ps is None:
            ps = cache[key] = Tag(key[0], key[1]).pairset(k)
        return ps

    return Memberships(k, list(vertex_pairs), list(tags), edge_pair_fn)


def compute_tags_bounded(cg: CondensedGraph, hub_supers: Sequence[int], h: int,
                         per_side: bool = False) -> Memberships:
    """Hop-bounded memberships: v is in G'(x,y) only when the detour through v
    fits the hop budget.

    Default bounds the total via-length dist(x,v) + dist(v,y) <= h; with
    per_side=True each leg is bounded by h independently.  Distances are hops
    on the condensed DAG (an SCC traversal is free).
    """
    if h < 1:
        raise ValueError("hop budget must be >= 1")
    k = len(hub_supers)
    fwd = [bounded_distances(cg, s, h, "forward") for s in hub_supers]
    rev = [bounded_distances(cg, s, h, "reverse") for s in hub_supers]

    def vertex_bit(x, y, v) -> bool:
        df = fwd[x].get(v)
        dr = rev[y].get(v)
        if df is None or dr is None:
            return False
        return (df <= h and dr <= h) if per_side else (df + dr <= h)

    n = cg.n_super
    vertex_pairs = [0] * n
    for v in range(n):
        ps = 0
        for x in range(k):
            if v not in fwd[x]:
                continue
            for y in range(k):
                if x != y and vertex_bit(x, y, v):
                    ps |= 1 << (x * k + y)
        vertex_pairs[v] = ps

    def edge_pair_fn(s, t):
        ps = 0
        for x in range(k):
            dfs = fwd[x].get(s)
            if dfs is None:
                continue
            for y in range(k):
                if x == y:
                    continue
                drt = rev[y].get(t)
                if drt is None:
                    continue
                ok = (dfs <= h and drt <= h and vertex_bit(x, y, s) and vertex_bit(x, y, t)) \
                    if per_side else (dfs + 1 + drt <= h)
                if ok:
                    ps |= 1 << (x * k + y)
        return ps

    return Memberships(k, vertex_pairs, None, edge_pair_fn)


def extract_path_subgraph(view, a_vid: int, b_vid: int, h: int) -> SubgraphView:
    """Vertices/edges on directed paths a ~> b of total length <= h.

    Works on the original (possibly cyclic) graph; anchors are always
    retained even when nothing connects them.
    """
    root = view.root
    a = root.index_of(a_vid)
    b = root.index_of(b_vid)
    if not view.contains_vertex(a) or not view.contains_vertex(b):
        raise KeyError(f"anchor outside view: {a_vid} or {b_vid}")
    df = _bfs_view(view, a, forward=True)
    db = _bfs_view(view, b, forward=False)
    vset = {v for v, d in df.items() if v in db and d + db[v] <= h}
    vset.update((a, b))
    eset = set()
    for e in view.edge_ids():
        s, t = root.e_src[e], root.e_tgt[e]
        if s in df and t in db and df[s] + 1 + db[t] <= h:
            eset.add(e)
    return SubgraphView(view, vset, eset, anchors=(a, b))


def _bfs_view(view, source: int, forward: bool) -> dict[int, int]:
    root = view.root
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        eids = view.out_edge_ids(u) if forward else view.in_edge_ids(u)
        for e in eids:
            v = root.e_tgt[e] if forward else root.e_src[e]
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist
