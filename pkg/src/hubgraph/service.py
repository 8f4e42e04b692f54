"""HTTP API: dataset registry, query execution, zoom navigation, edge details."""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .graph import condense_scc, load_graph
from .query import Catalog, HAGraph, QueryError, QuerySyntaxError, \
    execute, parse, zoom_edge, zoom_subset


class QueryRequest(BaseModel):
    dataset: Optional[str] = None
    text: str


class ZoomRequest(BaseModel):
    ha_id: str
    mode: str  # "edge" | "subset"
    edge: Optional[list] = None
    vertices: Optional[list] = None
    overrides: Optional[dict] = None


def hagraph_json(h: HAGraph) -> dict:
    root = h.ctx["view"].root
    hubs = []
    for vid, name, provenance in h.hubs:
        i = root.index_of(vid)
        hubs.append({"vid": vid, "name": name or str(vid), "provenance": provenance,
                     "attrs": {"v_grp": root.v_grp[i], "v_mr": root.v_mr[i]}})
    edges = []
    for (x, y), e in sorted(h.edges.items()):
        edges.append({
            "src": x, "dst": y,
            "summaries": {name: _summary_json(val)
                          for name, val in e.summaries.items()},
            "width_band": round(e.width_band, 3),
            "strength": e.strength,
            "subgraph_ref": f"/ha/{h.id}/edge/{x}/{y}/details",
        })
    return {"id": h.id, "dataset": h.dataset, "hubs": hubs, "edges": edges,
            "parent_id": h.parent_id, "phase_times": h.phase_times}


def _summary_json(value):
    if isinstance(value, dict):
        return [{"group_key": _jsonable(k), "value": _jsonable(v)}
                for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))]
    return _jsonable(value)


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, float) and v in (float("inf"), float("-inf")):
        return None
    return v


def create_app(catalog: Optional[Catalog] = None,
               manifest: Optional[list[dict]] = None) -> FastAPI:
    """Build the app; manifest entries: {name, vertices, edges[, delimiter]}."""
    catalog = catalog or Catalog()
    for entry in manifest or []:
        graph = load_graph(entry["vertices"], entry["edges"],
                           entry.get("delimiter", "\t"))
        catalog.register_dataset(entry["name"], graph)

    app = FastAPI(title="hubgraph")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.catalog = catalog
    lock = threading.Lock()
    scc_counts: dict[str, int] = {}

    def get_ha(ha_id: str) -> HAGraph:
        h = catalog.hagraphs.get(ha_id)
        if h is None:
            raise HTTPException(404, detail={"code": "unknown_hagraph", "id": ha_id})
        return h

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/datasets")
    def datasets():
        out = []
        for name, ds in catalog.datasets.items():
            if name not in scc_counts:
                scc_counts[name] = condense_scc(ds.graph).n_super
            out.append({"name": name, "vertices": ds.graph.n_vertices,
                        "edges": ds.graph.n_edges, "scc_count": scc_counts[name]})
        return out

    @app.post("/query")
    def run_query(req: QueryRequest):
        try:
            q = parse(req.text)
            with lock:
                h = execute(q, catalog, dataset_name=req.dataset)
        except QuerySyntaxError as exc:
            raise HTTPException(400, detail={"code": "syntax_error",
                                             "message": str(exc)})
        except (QueryError, KeyError) as exc:
            raise HTTPException(400, detail={"code": "query_error",
                                             "message": str(exc)})
        return hagraph_json(h)

    @app.post("/zoom")
    def zoom(req: ZoomRequest):
        h = get_ha(req.ha_id)
        try:
            with lock:
                if req.mode == "edge":
                    if not req.edge or len(req.edge) != 2:
                        raise HTTPException(400, detail={"code": "bad_request",
                                                         "message": "edge: [x, y] required"})
                    x, y = int(req.edge[0]), int(req.edge[1])
                    if (x, y) not in h.edges and (y, x) in h.edges:
                        x, y = y, x
                    if (x, y) not in h.edges:
                        raise HTTPException(404, detail={"code": "unknown_edge",
                                                         "edge": [x, y]})
                    child = zoom_edge(h, x, y, catalog, req.overrides)
                else:
                    child = zoom_subset(h, [int(v) for v in req.vertices or []],
                                        catalog, req.overrides)
        except QueryError as exc:
            raise HTTPException(400, detail={"code": "query_error",
                                             "message": str(exc)})
        return hagraph_json(child)

    @app.get("/ha/{ha_id}")
    def get_hagraph(ha_id: str):
        return hagraph_json(get_ha(ha_id))

    @app.get("/ha/{ha_id}/edge/{x}/{y}/details")
    def edge_details(ha_id: str, x: int, y: int):
        h = get_ha(ha_id)
        if (x, y) not in h.edges:
            raise HTTPException(404, detail={"code": "unknown_edge", "edge": [x, y]})
        view = h.edge_view(x, y)
        root = view.root
        vertices = [{"vid": root.vids[i], "name": root.v_label[i],
                     "v_grp": root.v_grp[i], "v_mr": root.v_mr[i]}
                    for i in view.vertex_indices()]
        edges = [{"src": root.vids[root.e_src[e]], "dst": root.vids[root.e_tgt[e]],
                  "e_grp": root.e_grp[e], "e_mr": root.e_mr[e],
                  "label": root.e_label[e]}
                 for e in view.edge_ids()]
        tables = {name: _summary_json(val)
                  for name, val in h.edges[(x, y)].summaries.items()}
        return {"ha_id": ha_id, "edge": [x, y], "vertices": vertices,
                "edges": edges, "tables": tables}

    return app


def serve(manifest: list[dict], host: str = "127.0.0.1", port: int = 8000):
    """Blocking entry point used by the CLI."""
    import uvicorn
    app = create_app(manifest=manifest)
    uvicorn.run(app, host=host, port=port, log_level="warning")
