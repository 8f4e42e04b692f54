"""Exploration queries: parsing, planning, execution into hub-summary graphs, zooming."""

from __future__ import annotations

import itertools
import re
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import aggregate as agg
from .graph import AttributedGraph, SubgraphView, condense_scc, whole_view
from .hubs import HubSet, compute_closeness_all, select_by_attribute, \
    top_k_closeness, top_max_degree
from .reach import build_tc_index
from .tags import compute_tags_bounded, compute_tags_indexed, \
    extract_path_subgraph, memberships_from_tags


class QuerySyntaxError(Exception):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class QueryError(Exception):
    """Semantic failure: unknown function, bad arity, unknown vertex."""


@dataclass
class Call:
    name: str
    args: list
    line: int = 0
    col: int = 0


@dataclass
class GEQuery:
    select: Call
    source: object            # Call or dataset/alias name (str)
    alias: Optional[str]
    group_by: Call
    summarize: list[Call]


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<int>-?\d+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_'.]*)
      | (?P<string>"[^"]*")
      | (?P<punct>[(),.])
    """, re.VERBOSE)

_KEYWORDS = {"select", "from", "group", "by", "summarize"}


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append((kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        _, value, line, col = self.peek()
        raise QuerySyntaxError(f"{message}, got {value!r}" if value else message,
                               line, col)

    def expect_keyword(self, word):
        kind, value, _, _ = self.peek()
        if kind == "ident" and value.lower() == word:
            return self.next()
        self.fail(f"expected {word.upper()}")

    def at_keyword(self, word):
        kind, value, _, _ = self.peek()
        return kind == "ident" and value.lower() == word

    def parse_query(self) -> GEQuery:
        self.expect_keyword("select")
        select = self.parse_call()
        self.expect_keyword("from")
        source, alias = self.parse_source()
        group_by = Call("betweenness", [])
        if self.at_keyword("group"):
            self.next()
            self.expect_keyword("by")
            group_by = self.parse_call()
        self.expect_keyword("summarize")
        self.expect_keyword("by")
        summarize = [self.parse_call()]
        while True:
            kind, value, _, _ = self.peek()
            if kind == "punct" and value == ",":
                self.next()
                summarize.append(self.parse_call())
            elif kind == "ident" and value.lower() not in _KEYWORDS:
                summarize.append(self.parse_call())
            else:
                break
        kind, value, line, col = self.peek()
        if kind != "eof":
            raise QuerySyntaxError(f"trailing input {value!r}", line, col)
        return GEQuery(select, source, alias, group_by, summarize)

    def parse_source(self):
        kind, value, line, col = self.peek()
        if kind != "ident":
            self.fail("expected a source graph or function call")
        if self.tokens[self.pos + 1][1] == "(":
            call = self.parse_call()
            alias = None
            kind, value, _, _ = self.peek()
            if kind == "ident" and value.lower() not in _KEYWORDS:
                alias = self.next()[1]
            return call, alias
        self.next()
        alias = None
        kind2, value2, _, _ = self.peek()
        if kind2 == "ident" and value2.lower() not in _KEYWORDS:
            alias = self.next()[1]
        return value, alias

    def parse_call(self) -> Call:
        kind, name, line, col = self.peek()
        if kind != "ident":
            self.fail("expected a function name")
        self.next()
        kind, value, _, _ = self.peek()
        if value != "(":
            # bare identifier: a zero-argument call
            return Call(name, [], line, col)
        self.next()
        args = []
        while True:
            kind, value, _, _ = self.peek()
            if value == ")":
                self.next()
                break
            if args:
                if value != ",":
                    self.fail("expected ',' or ')'")
                self.next()
                kind, value, _, _ = self.peek()
            if kind == "int":
                args.append(int(value))
            elif kind == "ident":
                args.append(value)
            elif kind == "string":
                args.append(value[1:-1])
            elif value == ".":
                args.append(".")
            else:
                self.fail("expected an argument")
            self.next()
        return Call(name, args, line, col)


def parse(text: str) -> GEQuery:
    """Parse query text into a GEQuery AST (keywords are case-insensitive)."""
    return _Parser(text).parse_query()


# ---------------------------------------------------------------------------
# catalog


class Catalog:
    """Registered datasets and query functions, plus the navigation session store."""

    def __init__(self, closeness_bands=(34, 67)):
        self.datasets: dict[str, Dataset] = {}
        self.hagraphs: dict[str, "HAGraph"] = {}
        self._next_id = itertools.count(1)
        # e_mr below bands[0] is Low, at or above bands[1] is High
        self.closeness_bands = closeness_bands
        self.cluster_threshold = agg.DEFAULT_CLUSTER_THRESHOLD
        self.tau_overrides: dict[str, agg.AggFunction] = {}

    def register_dataset(self, name: str, graph: AttributedGraph) -> "Dataset":
        ds = Dataset(name, graph)
        self.datasets[name] = ds
        return ds

    def new_id(self) -> str:
        return f"ha-{next(self._next_id)}"

    def store(self, h: "HAGraph") -> "HAGraph":
        self.hagraphs[h.id] = h
        return h

    # -- tau resolution ------------------------------------------------------

    STRUCTURAL = ("vertexCount", "relationshipType", "relationshipStrength")

    def resolve_tau(self, call: Call):
        name = call.name
        if name in self.tau_overrides:
            return self.tau_overrides[name]
        if name in self.STRUCTURAL:
            return name
        lname = name.lower()
        if lname == "sumvmrbyvgrpegrp":
            return agg.AggFunction(name, "edge", "sum", ("v_grp", "e_grp"), "v_mr")
        if lname == "sumemrbyvgrpegrp":
            return agg.AggFunction(name, "edge", "sum", ("v_grp", "e_grp"), "e_mr")
        if lname == "count":
            return agg.AggFunction(name, "vertex", "count")
        if lname == "closeness":
            low, high = self.closeness_bands
            def band(root, e):
                mr = root.e_mr[e]
                return "Low" if mr < low else ("High" if mr >= high else "Middle")
            return agg.AggFunction(name, "edge", "count", key_fn=band)
        raise QueryError(f"unknown summarizer {name!r}")


class Dataset:
    def __init__(self, name: str, graph: AttributedGraph):
        self.name = name
        self.graph = graph
        self._static_closeness: Optional[dict[int, float]] = None
        self._whole_cache: dict[tuple, tuple] = {}

    @property
    def static_closeness(self) -> dict[int, float]:
        # computed on first use, then navigation-invariant
        if self._static_closeness is None:
            self._static_closeness = compute_closeness_all(whole_view(self.graph))
        return self._static_closeness

    def condensed_whole(self, fns):
        """Cache condensation + closure of the full graph per function set."""
        key = tuple(sorted(fn.name for fn in fns))
        if key not in self._whole_cache:
            cg = condense_scc(self.graph, fns)
            self._whole_cache[key] = (cg, build_tc_index(cg))
        return self._whole_cache[key]


# ---------------------------------------------------------------------------
# result graph


@dataclass
class HAEdge:
    x_vid: int
    y_vid: int
    pair: tuple
    summaries: dict = field(default_factory=dict)
    strength: Optional[float] = None
    width_band: float = 3.0


@dataclass
class HAGraph:
    """Result graph: hubs plus per-ordered-pair summary bundles.

    Keeps enough execution context (view, condensed graph, memberships) to
    materialize any edge's induced subgraph for zooming.
    """

    id: str
    dataset: str
    hubs: list            # (vid, label, provenance)
    edges: dict           # (x_vid, y_vid) -> HAEdge
    parent_id: Optional[str]
    phase_times: dict
    query: GEQuery
    ctx: dict = field(repr=False, default_factory=dict)

    def hub_vids(self):
        return [h[0] for h in self.hubs]

    def edge_view(self, x_vid: int, y_vid: int) -> SubgraphView:
        """Materialize the induced subgraph behind edge (x, y) as a view."""
        edge = self.edges.get((x_vid, y_vid))
        if edge is None:
            raise QueryError(f"no edge ({x_vid}, {y_vid}) in {self.id}")
        cg, m = self.ctx["cg"], self.ctx["memberships"]
        vset, eset = agg.materialize_subgraph(cg, m, *edge.pair)
        root = self.ctx["view"].root
        return SubgraphView(root, vset, eset,
                           anchors=(root.index_of(x_vid), root.index_of(y_vid)))


# ---------------------------------------------------------------------------
# execution


def _resolve_vertex(graph: AttributedGraph, ref) -> int:
    if isinstance(ref, int):
        return graph.index_of(ref)
    try:
        return graph.index_of_label(ref)
    except KeyError:
        if str(ref).isdigit():
            return graph.index_of(int(ref))
        raise QueryError(f"unknown vertex {ref!r}") from None


def _run_sigma(call: Call, view, dataset: Dataset) -> HubSet:
    name = call.name.lower()
    ints = [a for a in call.args if isinstance(a, int)]
    if name == "topmaxdegreevertices":
        if not ints:
            raise QueryError(f"{call.name} needs an integer count")
        return top_max_degree(view, ints[-1])
    if name == "topcloseness":
        if not ints:
            raise QueryError(f"{call.name} needs an integer count")
        mode = "static" if "static" in call.args else "dynamic"
        static = dataset.static_closeness if mode == "static" else None
        return top_k_closeness(view, ints[-1], mode, static)
    if name == "attrequals":
        if len(call.args) < 2:
            raise QueryError(f"{call.name} needs (attribute, value)")
        return select_by_attribute(view, str(call.args[-2]), "eq", call.args[-1])
    if name == "attrabove":
        if len(call.args) < 2:
            raise QueryError(f"{call.name} needs (attribute, value)")
        return select_by_attribute(view, str(call.args[-2]), "above", call.args[-1])
    raise QueryError(f"unknown hub selector {call.name!r}")


def execute(query: GEQuery, catalog: Catalog, dataset_name: Optional[str] = None,
            pi_view: Optional[SubgraphView] = None,
            parent_id: Optional[str] = None) -> HAGraph:
    """Run the full pipeline: view -> hubs -> memberships -> plan -> summaries."""
    t_start = time.perf_counter()
    dataset = _resolve_dataset(query, catalog, dataset_name)
    graph = dataset.graph

    fns, structural = [], []
    for call in query.summarize:
        resolved = catalog.resolve_tau(call)
        (structural if isinstance(resolved, str) else fns).append(resolved)

    # ---- subgraph of interest + condensation + closure (SGExt)
    t0 = time.perf_counter()
    anchors: list[int] = []
    if pi_view is not None:
        view = pi_view
        anchors = list(pi_view.anchors)
        cg = condense_scc(view, fns)
        idx = build_tc_index(cg)
    elif isinstance(query.source, Call) and query.source.name.lower() == "subgraph":
        args = query.source.args
        if len(args) < 3 or not isinstance(args[-1], int):
            raise QueryError("Subgraph needs (graph, a, b, hops)")
        a = _resolve_vertex(graph, args[-3])
        b = _resolve_vertex(graph, args[-2])
        view = extract_path_subgraph(whole_view(graph), graph.vids[a],
                                     graph.vids[b], args[-1])
        anchors = [a, b]
        cg = condense_scc(view, fns)
        idx = build_tc_index(cg)
    else:
        view = whole_view(graph)
        cg, idx = dataset.condensed_whole(fns)
    hubset = _run_sigma(query.select, view, dataset)
    for a in anchors:
        hubset.add(a, "anchor")
    hub_supers = [cg.super_of[i] for i in hubset.indices]
    k = len(hub_supers)
    sgext_time = time.perf_counter() - t0

    # ---- memberships for vertices and edges (Tag)
    t0 = time.perf_counter()
    gname = query.group_by.name.lower()
    if gname in ("betweenness", "betweeness"):
        hops = [a for a in query.group_by.args if isinstance(a, int)]
        if hops:
            m = compute_tags_bounded(cg, hub_supers, hops[0])
        else:
            m = memberships_from_tags(compute_tags_indexed(cg, hub_supers, idx), k)
    else:
        raise QueryError(f"unknown grouping function {query.group_by.name!r}")

    v_pairs = m.vertex_pairs
    e_pairs: list[int] = []
    e_elements: list = []
    for j in range(len(cg.e_orig)):
        e_pairs.append(m.edge_pairs(cg.e_super_src[j], cg.e_super_tgt[j]))
        e_elements.append(cg.e_orig[j])
    intra_ids = []
    for s in range(cg.n_super):
        if cg.intra_edge_ids[s]:
            e_pairs.append(m.edge_pairs(s, s))
            intra_ids.append(s)
    tag_time = time.perf_counter() - t0

    # ---- same-tag grouping + sharing plans (Plan)
    t0 = time.perf_counter()
    root = view.root
    v_fns = [f for f in fns if f.kind == "vertex"]
    e_fns = [f for f in fns if f.kind == "edge"]
    v_tables = {f.name: cg.vertex_tables[f.name] for f in v_fns}

    threshold = catalog.cluster_threshold
    v_plan = agg.build_as_plan(v_pairs, k, threshold) if v_fns else None
    e_plan = agg.build_as_plan(e_pairs, k, threshold) if e_fns else None
    plan_time = time.perf_counter() - t0

    # ---- aggregation (Agg)
    t0 = time.perf_counter()
    e_tables = {}
    for f in e_fns:
        tables = [{f.edge_key(root, e): f.edge_value(root, e)} for e in e_elements]
        tables.extend(cg.intra_edge_tables[f.name][s] for s in intra_ids)
        e_tables[f.name] = tables
    results: dict = {}
    counts: dict = {}
    if v_plan is not None:
        r, c = agg.execute_plan(v_plan, v_tables, v_fns)
        _merge(results, r)
        counts.update(c)
    if e_plan is not None:
        r, c = agg.execute_plan(e_plan, e_tables, e_fns)
        _merge(results, r)
        counts.update(c)

    edges: dict = {}
    hub_vids = [root.vids[i] for i in hubset.indices]
    for x in range(k):
        hub_ps = m.vertex_pairs[hub_supers[x]]
        for y in range(k):
            if x == y or not (hub_ps >> (x * k + y)) & 1:
                continue
            e = HAEdge(hub_vids[x], hub_vids[y], (x, y))
            for fn in fns:
                e.summaries[fn.name] = {
                    _key_repr(key): fn.finalize(val)
                    for key, val in results.get((x, y), {}).get(fn.name, {}).items()}
            if structural:
                _add_structural(e, structural, cg, m, root,
                                hubset.indices[x], hubset.indices[y])
            edges[(hub_vids[x], hub_vids[y])] = e
    agg_time = time.perf_counter() - t0

    _assign_widths(edges)
    total = time.perf_counter() - t_start
    h = HAGraph(
        id=catalog.new_id(),
        dataset=dataset.name,
        hubs=[(root.vids[i], root.v_label[i], prov)
              for i, prov in zip(hubset.indices, hubset.provenance)],
        edges=edges,
        parent_id=parent_id,
        phase_times={"sgext": sgext_time, "tag": tag_time, "plan": plan_time,
                     "agg": agg_time, "total": total},
        query=query,
        ctx={"view": view, "cg": cg, "memberships": m,
             "hub_supers": hub_supers, "hub_indices": list(hubset.indices),
             "dataset": dataset, "op_counts": counts,
             "plans": {"vertex": v_plan, "edge": e_plan},
             "agg_inputs": {"vertex": (v_pairs, v_tables, v_fns),
                            "edge": (e_pairs, e_tables, e_fns)}},
    )
    return catalog.store(h)


def _resolve_dataset(query, catalog, dataset_name):
    if dataset_name is not None:
        if dataset_name not in catalog.datasets:
            raise QueryError(f"unknown dataset {dataset_name!r}")
        return catalog.datasets[dataset_name]
    candidates = []
    if isinstance(query.source, str):
        candidates.append(query.source)
    elif isinstance(query.source, Call):
        candidates.extend(a for a in query.source.args if isinstance(a, str))
    for name in candidates:
        if name in catalog.datasets:
            return catalog.datasets[name]
    if len(catalog.datasets) == 1:
        return next(iter(catalog.datasets.values()))
    raise QueryError("cannot resolve dataset; register it or pass its name")


def _key_repr(key):
    if isinstance(key, tuple):
        return key if len(key) != 1 else key[0]
    return key


def _merge(results, part):
    for xy, tables in part.items():
        results.setdefault(xy, {}).update(tables)


def _add_structural(e: HAEdge, structural, cg, m, root, x_idx, y_idx):
    vset, eset = agg.materialize_subgraph(cg, m, *e.pair)
    dist, labels = agg.shortest_path_summary(root, vset, eset, x_idx, y_idx)
    strength = agg.relationship_strength(len(eset), dist)
    e.strength = strength
    for name in structural:
        if name == "vertexCount":
            e.summaries[name] = len(vset)
        elif name == "relationshipType":
            e.summaries[name] = [lab or "" for lab in labels]
        elif name == "relationshipStrength":
            e.summaries[name] = strength


def _assign_widths(edges: dict) -> None:
    strengths = [e.strength for e in edges.values() if e.strength is not None]
    if not strengths:
        return
    lo, hi = min(strengths), max(strengths)
    for e in edges.values():
        if e.strength is None:
            continue
        e.width_band = 3.0 if hi == lo else 1.0 + 4.0 * (e.strength - lo) / (hi - lo)


# ---------------------------------------------------------------------------
# navigation


def _child_query(parent: GEQuery, overrides: Optional[dict]) -> GEQuery:
    overrides = overrides or {}
    def pick(field_name, default):
        value = overrides.get(field_name)
        if value is None:
            return default
        return parse(f"SELECT {value} FROM g SUMMARIZE BY x()").select \
            if isinstance(value, str) else value
    return GEQuery(
        select=pick("select", parent.select),
        source="zoom",
        alias=None,
        group_by=pick("group_by", parent.group_by),
        summarize=parent.summarize if overrides.get("summarize") is None
        else overrides["summarize"],
    )


def zoom_edge(h: HAGraph, x_vid: int, y_vid: int, catalog: Catalog,
              overrides: Optional[dict] = None) -> HAGraph:
    """Re-run the pipeline with the stored induced subgraph of one edge as
    the subgraph of interest; x and y become the anchors."""
    view = h.edge_view(x_vid, y_vid)
    q = _child_query(h.query, overrides)
    return execute(q, catalog, dataset_name=h.dataset, pi_view=view, parent_id=h.id)


def zoom_subset(h: HAGraph, vids: Sequence[int], catalog: Catalog,
                overrides: Optional[dict] = None) -> HAGraph:
    """Union of the induced subgraphs among a hub subset as the new view."""
    if len(vids) < 2:
        raise QueryError("subset zoom needs at least 2 hubs")
    hub_vids = h.hub_vids()
    for v in vids:
        if v not in hub_vids:
            raise QueryError(f"vertex {v} is not a hub of {h.id}")
    root = h.ctx["view"].root
    cg, m = h.ctx["cg"], h.ctx["memberships"]
    vset, eset = set(), set()
    for x_vid in vids:
        for y_vid in vids:
            if (x_vid, y_vid) in h.edges:
                vs, es = agg.materialize_subgraph(cg, m, *h.edges[(x_vid, y_vid)].pair)
                vset |= vs
                eset |= es
    anchors = [root.index_of(v) for v in vids]
    vset.update(anchors)
    view = SubgraphView(root, vset, eset, anchors=anchors)
    q = _child_query(h.query, overrides)
    return execute(q, catalog, dataset_name=h.dataset, pi_view=view, parent_id=h.id)
