"""Per-subgraph summaries: shared-nothing baseline, sharing planner, structural stats.

The planner works over pair-bitsets (one bit per ordered hub pair), which
subsumes plain S/R-rectangle tags and hop-bounded memberships uniformly: the
intersection of two rectangle tags enumerates exactly the AND of their pair
bitsets, so Eq-style saving arithmetic is unchanged.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .tags import Memberships, Tag, bits, pairs_of

DEFAULT_CLUSTER_THRESHOLD = 3


# ---------------------------------------------------------------------------
# aggregate functions


@dataclass
class AggFunction:
    """A distributive/algebraic aggregate over vertices or edges.

    dims name the group-by key parts: "v_grp"/"e_grp" (for edge functions
    "v_grp" is the source endpoint's group, per the vid->attribute join), or
    a custom key via key_fn.  op "avg" carries (sum, count) pairs and is
    finalized at read time.  key_domain, when set, promises integer keys in
    [0, key_domain) with positive sums, enabling a dense fast path.
    """

    name: str
    kind: str                     # "vertex" | "edge"
    op: str                       # sum | count | min | max | avg
    dims: tuple = ()
    measure: Optional[str] = None  # v_mr | e_mr | None (count)
    key_fn: Optional[Callable] = None
    key_domain: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("vertex", "edge"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.op not in ("sum", "count", "min", "max", "avg"):
            raise ValueError(f"bad op {self.op!r}")

    # -- raw element access --------------------------------------------------

    def vertex_key(self, root, i: int):
        if self.key_fn is not None:
            return self.key_fn(root, i)
        return tuple(root.v_grp[i] if d == "v_grp" else root.vertex_attr(i, d)
                     for d in self.dims)

    def edge_key(self, root, e: int):
        if self.key_fn is not None:
            return self.key_fn(root, e)
        out = []
        for d in self.dims:
            if d == "e_grp":
                out.append(root.e_grp[e])
            elif d == "v_grp":
                out.append(root.v_grp[root.e_src[e]])
            else:
                raise KeyError(f"unknown edge dim {d!r}")
        return tuple(out)

    def vertex_value(self, root, i: int):
        return self._wrap(root.v_mr[i] if self.measure == "v_mr" else 1)

    def edge_value(self, root, e: int):
        if self.measure == "e_mr":
            raw = root.e_mr[e]
        elif self.measure == "v_mr":
            raw = root.v_mr[root.e_src[e]]
        else:
            raw = 1
        return self._wrap(raw)

    def _wrap(self, raw):
        if self.op == "count":
            return 1
        if self.op == "avg":
            return (raw, 1)
        return raw

    def combine(self, a, b):
        if self.op in ("sum", "count"):
            return a + b
        if self.op == "min":
            return a if a <= b else b
        if self.op == "max":
            return a if a >= b else b
        return (a[0] + b[0], a[1] + b[1])  # avg as (sum, count)

    def finalize(self, v):
        return v[0] / v[1] if self.op == "avg" else v

    # -- pre-aggregation (SCC condensation, same-tag groups) -----------------

    def preaggregate_vertices(self, root, indices: Sequence[int]) -> dict:
        table: dict = {}
        for i in indices:
            self.merge_row(table, self.vertex_key(root, i), self.vertex_value(root, i))
        return table

    def preaggregate_edges(self, root, eids: Sequence[int]) -> dict:
        table: dict = {}
        for e in eids:
            self.merge_row(table, self.edge_key(root, e), self.edge_value(root, e))
        return table

    def merge_row(self, table: dict, key, value) -> None:
        cur = table.get(key)
        table[key] = value if cur is None else self.combine(cur, value)

    def merge_table(self, into: dict, table: dict) -> int:
        """Merge and return the number of row additions performed."""
        for key, value in table.items():
            self.merge_row(into, key, value)
        return len(table)


def shared_component(t1: Tag, t2: Tag) -> Tag:
    """Subgraphs two tags have in common: bitset AND on both sides."""
    return t1.intersect(t2)


@dataclass
class Cluster:
    """A set of same-shape groups sharing a common tag CT."""

    ct_pairs: int                 # pair-bitset intersection of member tags
    members: list[int] = field(default_factory=list)  # group ids

    @property
    def size(self) -> int:
        return len(self.members)


def saving(cluster: Cluster, nt_pairs: int) -> int:
    """Net delivery benefit of admitting a tag into a cluster.

    |CT & nt| * (SZ + 1) - |CT| * SZ; negative means admission would lose
    more shared deliveries than it gains.
    """
    new_ct = (cluster.ct_pairs & nt_pairs).bit_count()
    return new_ct * (cluster.size + 1) - cluster.ct_pairs.bit_count() * cluster.size


def saving_tags(ct: Tag, size: int, nt: Tag) -> int:
    """Tag-level form of the saving function (identical arithmetic)."""
    return ct.intersect(nt).cardinality * (size + 1) - ct.cardinality * size


# ---------------------------------------------------------------------------
# plan construction


@dataclass
class Group:
    pairs: int
    element_ids: list[int]


@dataclass
class AggPlan:
    """Routing plan: ordered instructions moving pre-aggregates into subgraphs.

    Instruction forms (gid = group id, cid = cluster id, ps = pair-bitset):
      ("direct", gid, ps)          deliver group table to every pair in ps
      ("cluster_open", cid, gid)   start a cluster; combined := group table
      ("cluster_deliver", cid, ps) deliver current combined table to ps
      ("group_direct", gid, ps)    deliver group table to ps (differential part)
      ("cluster_add", cid, gid)    fold group into the cluster's combined table
      ("cluster_close", cid, ps)   deliver combined table to the final common tag
    """

    k: int
    groups: list[Group]
    ops: list[tuple]
    clusters: list[Cluster]
    predicted_add_ops: int = 0

    def audit(self, element_pairs: Sequence[int]) -> None:
        """Check the delivery partition: every element's pair is covered exactly once.

        Raises AssertionError on overlap or gap.
        """
        delivered = {}
        for g in self.groups:
            for el in g.element_ids:
                delivered[el] = 0
        cluster_members: dict[int, list[int]] = {}

        def credit(group_ids, ps):
            for gid in group_ids:
                for el in self.groups[gid].element_ids:
                    if delivered[el] & ps:
                        raise AssertionError(f"double delivery for element {el}")
                    delivered[el] |= ps

        for op in self.ops:
            kind = op[0]
            if kind == "direct" or kind == "group_direct":
                credit([op[1]], op[2])
            elif kind == "cluster_open":
                cluster_members[op[1]] = [op[2]]
            elif kind == "cluster_add":
                cluster_members[op[1]].append(op[2])
            elif kind in ("cluster_deliver", "cluster_close"):
                credit(cluster_members[op[1]], op[2])
        for el, got in delivered.items():
            if got != element_pairs[el]:
                raise AssertionError(f"delivery gap for element {el}")


def _as_pairsets(elements, k: int) -> list[int]:
    out = []
    for el in elements:
        out.append(el.pairset(k) if isinstance(el, Tag) else int(el))
    return out


def build_as_plan(elements, k: int,
                  threshold: int = DEFAULT_CLUSTER_THRESHOLD) -> AggPlan:
    """Build the sharing plan over element memberships (Tags or pair-bitsets).

    Same-membership elements are merged into pre-aggregated groups; distinct
    memberships are processed in descending cardinality.  Those below the
    threshold are routed directly; otherwise the cluster with the best
    positive saving absorbs the group, shrinking its common tag and routing
    the shrink delta and the newcomer's differential part immediately.
    """
    pairsets = _as_pairsets(elements, k)
    by_pairs: dict[int, list[int]] = {}
    for el, ps in enumerate(pairsets):
        if ps == 0:
            continue  # member of no subgraph
        by_pairs.setdefault(ps, []).append(el)

    order = sorted(by_pairs, key=lambda ps: (-ps.bit_count(), ps))
    groups = [Group(ps, by_pairs[ps]) for ps in order]
    clusters: list[Cluster] = []
    ops: list[tuple] = []

    for gid, g in enumerate(groups):
        nt = g.pairs
        if nt.bit_count() < threshold:
            ops.append(("direct", gid, nt))
            continue
        best_cid, best_saving = -1, 0
        for cid, c in enumerate(clusters):
            s = saving(c, nt)
            if s > best_saving:
                best_cid, best_saving = cid, s
        if best_cid < 0:
            cid = len(clusters)
            clusters.append(Cluster(nt, [gid]))
            ops.append(("cluster_open", cid, gid))
            continue
        c = clusters[best_cid]
        st = c.ct_pairs & nt
        ct_delta = c.ct_pairs & ~st
        nt_delta = nt & ~st
        if ct_delta:
            ops.append(("cluster_deliver", best_cid, ct_delta))
        if nt_delta:
            ops.append(("group_direct", gid, nt_delta))
        ops.append(("cluster_add", best_cid, gid))
        c.ct_pairs = st
        c.members.append(gid)

    for cid, c in enumerate(clusters):
        if c.ct_pairs:
            ops.append(("cluster_close", cid, c.ct_pairs))

    plan = AggPlan(k, groups, ops, clusters)
    predicted = sum(len(g.element_ids) - 1 for g in groups)  # same-tag merges
    for op in plan.ops:
        if op[0] in ("direct", "group_direct", "cluster_deliver", "cluster_close"):
            predicted += op[2].bit_count()
        elif op[0] == "cluster_add":
            predicted += 1
    plan.predicted_add_ops = predicted
    return plan


# ---------------------------------------------------------------------------
# execution


@dataclass
class OpCounts:
    deliveries: int = 0
    merges: int = 0

    @property
    def total(self) -> int:
        return self.deliveries + self.merges


class _Accumulators:
    """Per-pair group-by tables for one function, dict- or dense-array-backed."""

    def __init__(self, fn: AggFunction):
        self.fn = fn
        self.dense = fn.key_domain is not None and fn.op in ("sum", "count")
        self.slots: dict = {}

    def deliver(self, pair: int, table: dict) -> None:
        slot = self.slots.get(pair)
        if self.dense:
            if slot is None:
                slot = self.slots[pair] = np.zeros(self.fn.key_domain, dtype=np.int64)
            for key, value in table.items():
                slot[key] += value
        else:
            if slot is None:
                slot = self.slots[pair] = {}
            self.fn.merge_table(slot, table)

    def result(self, k: int) -> dict:
        out = {}
        for pair, slot in self.slots.items():
            xy = divmod(pair, k)
            if self.dense:
                nz = np.nonzero(slot)[0]
                out[xy] = {int(key): int(slot[key]) for key in nz}
            else:
                out[xy] = dict(slot)
        return out


def _element_tables(fn: AggFunction, root, elements) -> list[dict]:
    """One single-row table per raw element; pre-built tables pass through."""
    tables = []
    for el in elements:
        if isinstance(el, dict):
            tables.append(el)
        elif fn.kind == "vertex":
            tables.append({fn.vertex_key(root, el): fn.vertex_value(root, el)})
        else:
            tables.append({fn.edge_key(root, el): fn.edge_value(root, el)})
    return tables


def sn_aggregate(element_pairs: Sequence[int], tables_by_fn: dict,
                 fns: Sequence[AggFunction], k: int):
    """Shared-nothing baseline: each element delivered to every subgraph in its tag.

    Returns ({(x, y): {fn_name: {key: value}}}, {fn_name: OpCounts}).  Delivery
    cost is one add per table row per destination pair.
    """
    results = {}
    counts = {}
    for fn in fns:
        acc = _Accumulators(fn)
        cnt = OpCounts()
        tables = tables_by_fn[fn.name]
        for el, ps in enumerate(element_pairs):
            if ps == 0:
                continue
            table = tables[el]
            rows = len(table)
            for b in bits(ps):
                acc.deliver(b, table)
                cnt.deliveries += rows
        _merge_results(results, acc.result(k), fn.name)
        counts[fn.name] = cnt
    return results, counts


def execute_plan(plan: AggPlan, tables_by_fn: dict, fns: Sequence[AggFunction],
                 audit_pairs: Optional[Sequence[int]] = None):
    """Run the sharing plan; output is value-identical to sn_aggregate.

    When audit_pairs is given the routing partition is re-verified first and
    a breach aborts with a diagnostic.
    """
    if audit_pairs is not None:
        plan.audit(audit_pairs)
    results = {}
    counts = {}
    for fn in fns:
        acc = _Accumulators(fn)
        cnt = OpCounts()
        tables = tables_by_fn[fn.name]

        group_tables = []
        for g in plan.groups:
            table = dict(tables[g.element_ids[0]])
            for el in g.element_ids[1:]:
                cnt.merges += fn.merge_table(table, tables[el])
            group_tables.append(table)

        combined: dict[int, dict] = {}  # cid -> running cluster table

        def deliver(table, ps):
            rows = len(table)
            for b in bits(ps):
                acc.deliver(b, table)
                cnt.deliveries += rows

        for op in plan.ops:
            kind = op[0]
            if kind == "direct" or kind == "group_direct":
                deliver(group_tables[op[1]], op[2])
            elif kind == "cluster_open":
                combined[op[1]] = dict(group_tables[op[2]])
            elif kind == "cluster_deliver":
                deliver(combined[op[1]], op[2])
            elif kind == "cluster_add":
                cnt.merges += fn.merge_table(combined[op[1]], group_tables[op[2]])
            elif kind == "cluster_close":
                deliver(combined[op[1]], op[2])
        _merge_results(results, acc.result(plan.k), fn.name)
        counts[fn.name] = cnt
    return results, counts


def _merge_results(results: dict, per_pair: dict, fn_name: str) -> None:
    for xy, table in per_pair.items():
        results.setdefault(xy, {})[fn_name] = table


# ---------------------------------------------------------------------------
# structural summaries


def subgraph_supers(m: Memberships, x: int, y: int) -> list[int]:
    bit = 1 << (x * m.k + y)
    return [v for v, ps in enumerate(m.vertex_pairs) if ps & bit]


def vertex_count(cg, m: Memberships, x: int, y: int) -> int:
    """Original-vertex count of G'(x, y), expanding super-vertices."""
    return sum(len(cg.members[s]) for s in subgraph_supers(m, x, y))


def materialize_subgraph(cg, m: Memberships, x: int, y: int):
    """Original-graph (vertex set, edge set) of the induced subgraph G'(x, y)."""
    bit = 1 << (x * m.k + y)
    vset = set()
    eset = set()
    for s in subgraph_supers(m, x, y):
        vset.update(cg.members[s])
        if m.edge_pairs(s, s) & bit:
            eset.update(cg.intra_edge_ids[s])
    for j in range(len(cg.e_orig)):
        if m.edge_pairs(cg.e_super_src[j], cg.e_super_tgt[j]) & bit:
            eset.add(cg.e_orig[j])
    return vset, eset


UNREACHABLE = float("inf")


def shortest_path_summary(root, vset: set[int], eset: set[int],
                          x: int, y: int):
    """(hop distance, edge labels) along one shortest x->y path inside the subgraph.

    Among equal-length paths the lexicographically smallest vid sequence
    wins; unreachable pairs give (inf, []).
    """
    if x == y:
        return 0, []
    d_from = _bfs_restricted(root, vset, eset, x, forward=True)
    if y not in d_from:
        return UNREACHABLE, []
    d_to = _bfs_restricted(root, vset, eset, y, forward=False)
    length = d_from[y]
    labels = []
    cur = x
    for step in range(1, length + 1):
        best_v, best_e = None, None
        for e in root.out_edges[cur]:
            if e not in eset:
                continue
            t = root.e_tgt[e]
            if d_from.get(t) == step and d_to.get(t) == length - step:
                if best_v is None or root.vids[t] < root.vids[best_v] \
                        or (t == best_v and e < best_e):
                    best_v, best_e = t, e
        labels.append(root.e_label[best_e])
        cur = best_v
    return length, labels


def relationship_strength(edge_count: int, distance) -> float:
    """Density proxy for tie strength: subgraph edge count over shortest distance.

    Stands in for trust-propagation scoring; swap in a model-based scorer by
    replacing this function.
    """
    if distance in (0, UNREACHABLE) or edge_count == 0:
        return 0.0
    return edge_count / distance


def _bfs_restricted(root, vset, eset, source, forward: bool):
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        eids = root.out_edges[u] if forward else root.in_edges[u]
        for e in eids:
            if e not in eset:
                continue
            v = root.e_tgt[e] if forward else root.e_src[e]
            if v in vset and v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist
