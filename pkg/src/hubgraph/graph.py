"""Attributed directed graphs: loading, views, SCC condensation, topological order."""

from __future__ import annotations

import csv
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

VERTEX_COLUMNS = ("vid", "v_grp", "v_mr")
EDGE_COLUMNS = ("src_vid", "tgt_vid", "e_grp", "e_mr")


class GraphLoadError(Exception):
    """Raised when a vertex/edge table cannot be loaded."""


class AttributedGraph:
    """Directed graph with integer group/measure attributes on vertices and edges.

    Vertices are stored in vid order; internal indices run 0..n-1 in that
    order.  Immutable after construction.
    """

    def __init__(self, vertices, edges):
        """vertices: iterable of (vid, v_grp, v_mr[, label]);
        edges: iterable of (src_vid, tgt_vid, e_grp, e_mr[, label])."""
        rows = sorted(vertices, key=lambda r: r[0])
        self.vids: list[int] = []
        self.v_grp: list[int] = []
        self.v_mr: list[int] = []
        self.v_label: list[Optional[str]] = []
        seen = set()
        for r in rows:
            vid = int(r[0])
            if vid in seen:
                raise GraphLoadError(f"duplicate vid {vid}")
            seen.add(vid)
            self.vids.append(vid)
            self.v_grp.append(int(r[1]))
            self.v_mr.append(int(r[2]))
            self.v_label.append(r[3] if len(r) > 3 else None)
        self._index_of = {vid: i for i, vid in enumerate(self.vids)}

        self.e_src: list[int] = []
        self.e_tgt: list[int] = []
        self.e_grp: list[int] = []
        self.e_mr: list[int] = []
        self.e_label: list[Optional[str]] = []
        for r in edges:
            s, t = int(r[0]), int(r[1])
            if s not in self._index_of or t not in self._index_of:
                raise GraphLoadError(f"dangling edge endpoint ({s}, {t})")
            self.e_src.append(self._index_of[s])
            self.e_tgt.append(self._index_of[t])
            self.e_grp.append(int(r[2]))
            self.e_mr.append(int(r[3]))
            self.e_label.append(r[4] if len(r) > 4 else None)

        n = len(self.vids)
        self.out_edges: list[list[int]] = [[] for _ in range(n)]
        self.in_edges: list[list[int]] = [[] for _ in range(n)]
        for eid in range(len(self.e_src)):
            self.out_edges[self.e_src[eid]].append(eid)
            self.in_edges[self.e_tgt[eid]].append(eid)

    # -- size ----------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vids)

    @property
    def n_edges(self) -> int:
        return len(self.e_src)

    def index_of(self, vid: int) -> int:
        try:
            return self._index_of[vid]
        except KeyError:
            raise KeyError(f"unknown vid {vid}") from None

    def index_of_label(self, label: str) -> int:
        for i, lab in enumerate(self.v_label):
            if lab == label:
                return i
        raise KeyError(f"no vertex labeled {label!r}")

    # -- graph-like protocol (shared with SubgraphView) ----------------------

    def vertex_indices(self) -> range:
        return range(self.n_vertices)

    def edge_ids(self) -> range:
        return range(self.n_edges)

    def contains_vertex(self, i: int) -> bool:
        return 0 <= i < self.n_vertices

    def out_neighbors(self, i: int) -> Iterable[int]:
        return (self.e_tgt[e] for e in self.out_edges[i])

    def in_neighbors(self, i: int) -> Iterable[int]:
        return (self.e_src[e] for e in self.in_edges[i])

    def out_edge_ids(self, i: int) -> Iterable[int]:
        return self.out_edges[i]

    def in_edge_ids(self, i: int) -> Iterable[int]:
        return self.in_edges[i]

    @property
    def root(self) -> "AttributedGraph":
        return self

    def vertex_attr(self, i: int, name: str):
        if name == "v_grp":
            return self.v_grp[i]
        if name == "v_mr":
            return self.v_mr[i]
        if name in ("label", "name"):
            return self.v_label[i]
        if name == "vid":
            return self.vids[i]
        raise KeyError(f"unknown vertex attribute {name!r}")

    def save(self, vertex_path, edge_path, delimiter: str = "\t") -> None:
        """Write the two delimited tables; inverse of load_graph."""
        has_vlab = any(l is not None for l in self.v_label)
        has_elab = any(l is not None for l in self.e_label)
        with open(vertex_path, "w", newline="") as f:
            w = csv.writer(f, delimiter=delimiter)
            w.writerow(VERTEX_COLUMNS + (("label",) if has_vlab else ()))
            for i in range(self.n_vertices):
                row = [self.vids[i], self.v_grp[i], self.v_mr[i]]
                if has_vlab:
                    row.append(self.v_label[i] or "")
                w.writerow(row)
        with open(edge_path, "w", newline="") as f:
            w = csv.writer(f, delimiter=delimiter)
            w.writerow(EDGE_COLUMNS + (("label",) if has_elab else ()))
            for e in range(self.n_edges):
                row = [self.vids[self.e_src[e]], self.vids[self.e_tgt[e]],
                       self.e_grp[e], self.e_mr[e]]
                if has_elab:
                    row.append(self.e_label[e] or "")
                w.writerow(row)


def load_graph(vertex_path, edge_path, delimiter: str = "\t") -> AttributedGraph:
    """Load an attributed graph from two header-bearing delimited files.

    Vertex columns: vid, v_grp, v_mr[, label]; edge columns: src_vid,
    tgt_vid, e_grp, e_mr[, label].  Errors name the offending line.
    """
    vertices = _read_table(vertex_path, delimiter, VERTEX_COLUMNS)
    edges = _read_table(edge_path, delimiter, EDGE_COLUMNS)
    return AttributedGraph(vertices, edges)


def _read_table(path, delimiter, required):
    rows = []
    with open(path, newline="") as f:
        reader = csv.reader(f, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            return rows
        header = [h.strip() for h in header]
        if tuple(header[: len(required)]) != required:
            raise GraphLoadError(
                f"{path}: header must start with {','.join(required)}, got {','.join(header)}")
        has_label = len(header) > len(required) and header[len(required)] == "label"
        for lineno, raw in enumerate(reader, start=2):
            if not raw or (len(raw) == 1 and not raw[0].strip()):
                continue
            try:
                row = [int(x) for x in raw[: len(required)]]
            except ValueError as exc:
                raise GraphLoadError(f"{path}:{lineno}: malformed row: {exc}") from None
            if any(v < 0 for v in row[:2]):
                raise GraphLoadError(f"{path}:{lineno}: negative id")
            if has_label and len(raw) > len(required):
                row.append(raw[len(required)] or None)
            rows.append(row)
    return rows


class SubgraphView:
    """A restriction of a parent graph to a vertex and edge subset.

    Composes: a view of a view references the same root graph, so vertex and
    edge ids are always root indices.
    """

    def __init__(self, parent, vertex_set: set[int], edge_set: set[int],
                 anchors: Sequence[int] = ()):
        root = parent.root
        for e in edge_set:
            if root.e_src[e] not in vertex_set or root.e_tgt[e] not in vertex_set:
                raise ValueError("view edge with endpoint outside the view")
        self.root: AttributedGraph = root
        self.vertex_set = vertex_set
        self.edge_set = edge_set
        self.anchors = tuple(anchors)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_set)

    @property
    def n_edges(self) -> int:
        return len(self.edge_set)

    def vertex_indices(self):
        return sorted(self.vertex_set)

    def edge_ids(self):
        return sorted(self.edge_set)

    def contains_vertex(self, i: int) -> bool:
        return i in self.vertex_set

    def out_edge_ids(self, i: int):
        return [e for e in self.root.out_edges[i] if e in self.edge_set]

    def in_edge_ids(self, i: int):
        return [e for e in self.root.in_edges[i] if e in self.edge_set]

    def out_neighbors(self, i: int):
        return (self.root.e_tgt[e] for e in self.out_edge_ids(i))

    def in_neighbors(self, i: int):
        return (self.root.e_src[e] for e in self.in_edge_ids(i))

    def restrict(self, vertex_set: set[int], edge_set: set[int],
                 anchors: Sequence[int] = ()) -> "SubgraphView":
        return SubgraphView(self, vertex_set & self.vertex_set,
                            edge_set & self.edge_set, anchors)


def whole_view(g: AttributedGraph, anchors: Sequence[int] = ()) -> SubgraphView:
    return SubgraphView(g, set(range(g.n_vertices)), set(range(g.n_edges)), anchors)


@dataclass
class CondensedGraph:
    """DAG of super-vertices produced by SCC condensation.

    Per super-vertex: member list (root vertex indices), pre-aggregated
    vertex tables and intra-SCC edge tables (one table per registered
    aggregate function name).  Inter-SCC edges are kept one per original
    edge so group-by semantics survive condensation.
    """

    root: AttributedGraph
    members: list[list[int]]           # super id -> root vertex indices
    super_of: dict[int, int]           # root vertex index -> super id
    e_super_src: list[int]
    e_super_tgt: list[int]
    e_orig: list[int]                  # inter-SCC super-edge -> root edge id
    intra_edge_ids: list[list[int]]    # super id -> intra-SCC root edge ids
    vertex_tables: dict[str, list[dict]] = field(default_factory=dict)
    intra_edge_tables: dict[str, list[dict]] = field(default_factory=dict)
    out_adj: list[list[int]] = field(default_factory=list)
    in_adj: list[list[int]] = field(default_factory=list)

    @property
    def n_super(self) -> int:
        return len(self.members)

    def min_member_vid(self, s: int) -> int:
        return min(self.root.vids[i] for i in self.members[s])


def _tarjan_scc(view) -> list[list[int]]:
    """Iterative Tarjan; returns SCCs in reverse topological order."""
    index = {}
    low = {}
    on_stack = set()
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for start in view.vertex_indices():
        if start in index:
            continue
        work = [(start, iter(list(view.out_neighbors(start))))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(list(view.out_neighbors(w)))))
                    advanced = True
                    break
                elif w in on_stack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def condense_scc(view, aggs: Sequence = ()) -> CondensedGraph:
    """Condense strongly connected components into pre-aggregated super-vertices.

    `view` is an AttributedGraph or SubgraphView.  `aggs` are aggregate
    function objects (see aggregate.AggFunction); each gets a pre-aggregated
    table per super-vertex (vertex functions) or per intra-SCC edge bundle
    (edge functions).
    """
    root = view.root
    sccs = _tarjan_scc(view)
    # deterministic numbering: supers sorted by smallest member vid
    for comp in sccs:
        comp.sort(key=lambda i: root.vids[i])
    sccs.sort(key=lambda comp: root.vids[comp[0]])
    super_of = {}
    for sid, comp in enumerate(sccs):
        for i in comp:
            super_of[i] = sid

    e_super_src, e_super_tgt, e_orig = [], [], []
    intra: list[list[int]] = [[] for _ in sccs]
    for e in view.edge_ids():
        s, t = super_of[root.e_src[e]], super_of[root.e_tgt[e]]
        if s == t:
            intra[s].append(e)
        else:
            e_super_src.append(s)
            e_super_tgt.append(t)
            e_orig.append(e)

    n = len(sccs)
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    seen_out = [set() for _ in range(n)]
    for s, t in zip(e_super_src, e_super_tgt):
        if t not in seen_out[s]:
            seen_out[s].add(t)
            out_adj[s].append(t)
            in_adj[t].append(s)

    cg = CondensedGraph(root, sccs, super_of, e_super_src, e_super_tgt,
                        e_orig, intra, {}, {}, out_adj, in_adj)
    for fn in aggs:
        if fn.kind == "vertex":
            cg.vertex_tables[fn.name] = [
                fn.preaggregate_vertices(root, comp) for comp in sccs]
        else:
            cg.intra_edge_tables[fn.name] = [
                fn.preaggregate_edges(root, eids) for eids in intra]
    return cg


def topological_order(cg: CondensedGraph) -> list[int]:
    """Kahn's algorithm; ties broken by smallest member vid (deterministic)."""
    indeg = [len(p) for p in cg.in_adj]
    heap = [(cg.min_member_vid(s), s) for s in range(cg.n_super) if indeg[s] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, s = heapq.heappop(heap)
        order.append(s)
        for t in cg.out_adj[s]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, (cg.min_member_vid(t), t))
    if len(order) != cg.n_super:
        raise RuntimeError("cycle detected in condensed graph; condensation failed")
    return order
