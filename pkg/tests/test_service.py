"""HTTP API behavior through an in-process test client."""

import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from hubgraph.query import Catalog
from hubgraph.service import create_app
from hubgraph.datasets import build_social_sample, write_social_sample


SQ1 = ("SELECT TopMaxDegreeVertices(G', 2) "
       "FROM Subgraph(social, kristy, bingfish, 4) G' "
       "GROUP BY Betweeness(G'.x, G'.y) "
       "SUMMARIZE BY vertexCount, relationshipType, relationshipStrength")


@pytest.fixture()
def client():
    catalog = Catalog()
    catalog.register_dataset("social", build_social_sample())
    return TestClient(create_app(catalog))


def run_sq1(client):
    r = client.post("/query", json={"dataset": "social", "text": SQ1})
    assert r.status_code == 200, r.text
    return r.json()


class TestBasics:
    def test_healthz(self, client):
        assert client.get("/healthz").json() == {"status": "ok"}

    def test_datasets_listing(self, client):
        [entry] = client.get("/datasets").json()
        assert entry["name"] == "social"
        assert entry["vertices"] == 30
        assert entry["edges"] == 90
        assert entry["scc_count"] >= 1

    def test_manifest_loading(self, tmp_path):
        vp, ep = write_social_sample(tmp_path)
        app = create_app(manifest=[{"name": "m", "vertices": str(vp),
                                    "edges": str(ep)}])
        c = TestClient(app)
        [entry] = c.get("/datasets").json()
        assert entry["name"] == "m" and entry["vertices"] == 30


class TestQueryEndpoint:
    def test_social_query_shape(self, client):
        body = run_sq1(client)
        assert body["dataset"] == "social"
        assert body["parent_id"] is None
        names = {h["name"] for h in body["hubs"]}
        assert names == {"kristy", "bingfish", "David", "karlfun"}
        assert body["edges"]
        for e in body["edges"]:
            assert e["summaries"]["vertexCount"] == 19
            assert 1.0 <= e["width_band"] <= 5.0
            assert e["subgraph_ref"].startswith(f"/ha/{body['id']}/edge/")
        assert set(body["phase_times"]) == \
            {"sgext", "tag", "plan", "agg", "total"}

    def test_repeat_queries_get_fresh_ids(self, client):
        a, b = run_sq1(client), run_sq1(client)
        assert a["id"] != b["id"]
        strip = lambda body: {k: v for k, v in body.items()
                              if k not in ("id", "phase_times")}
        sa, sb = strip(a), strip(b)
        sa["edges"] = [{k: v for k, v in e.items() if k != "subgraph_ref"}
                       for e in sa["edges"]]
        sb["edges"] = [{k: v for k, v in e.items() if k != "subgraph_ref"}
                       for e in sb["edges"]]
        assert sa == sb

    def test_syntax_error_code(self, client):
        r = client.post("/query", json={"text": "SELECT oops"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "syntax_error"

    def test_semantic_error_code(self, client):
        r = client.post("/query", json={
            "text": "SELECT frobnicate(1) FROM social SUMMARIZE BY count"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "query_error"


class TestNavigation:
    def test_get_hagraph_roundtrip(self, client):
        body = run_sq1(client)
        again = client.get(f"/ha/{body['id']}").json()
        assert again == body

    def test_unknown_hagraph(self, client):
        r = client.get("/ha/ha-999")
        assert r.status_code == 404
        assert r.json()["detail"]["code"] == "unknown_hagraph"

    def test_edge_details(self, client):
        body = run_sq1(client)
        e = next(e for e in body["edges"] if (e["src"], e["dst"]) == (0, 3))
        r = client.get(e["subgraph_ref"])
        assert r.status_code == 200
        detail = r.json()
        assert len(detail["vertices"]) == 19
        assert detail["tables"]["vertexCount"] == 19
        assert {v["name"] for v in detail["vertices"]} >= \
            {"kristy", "karlfun", "David"}
        vids = {v["vid"] for v in detail["vertices"]}
        assert all(ed["src"] in vids and ed["dst"] in vids
                   for ed in detail["edges"])

    def test_edge_details_unknown_edge(self, client):
        body = run_sq1(client)
        r = client.get(f"/ha/{body['id']}/edge/0/99/details")
        assert r.status_code == 404
        assert r.json()["detail"]["code"] == "unknown_edge"

    def test_zoom_edge(self, client):
        body = run_sq1(client)
        r = client.post("/zoom", json={"ha_id": body["id"], "mode": "edge",
                                       "edge": [0, 3]})
        assert r.status_code == 200
        child = r.json()
        assert child["parent_id"] == body["id"]
        names = {h["name"] for h in child["hubs"]}
        assert {"kristy", "karlfun"} <= names

    def test_zoom_edge_reversed_orientation_accepted(self, client):
        body = run_sq1(client)
        present = {(e["src"], e["dst"]) for e in body["edges"]}
        x, y = next(iter(present))
        r = client.post("/zoom", json={"ha_id": body["id"], "mode": "edge",
                                       "edge": [y, x]})
        assert r.status_code == 200

    def test_zoom_unknown_edge(self, client):
        body = run_sq1(client)
        r = client.post("/zoom", json={"ha_id": body["id"], "mode": "edge",
                                       "edge": [0, 98]})
        assert r.status_code == 404
        assert r.json()["detail"]["code"] == "unknown_edge"

    def test_zoom_edge_requires_pair(self, client):
        body = run_sq1(client)
        r = client.post("/zoom", json={"ha_id": body["id"], "mode": "edge"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "bad_request"

    def test_zoom_subset_with_override(self, client):
        body = run_sq1(client)
        r = client.post("/zoom", json={
            "ha_id": body["id"], "mode": "subset", "vertices": [0, 3],
            "overrides": {"select": "TopMaxDegreeVertices(1)"}})
        assert r.status_code == 200
        child = r.json()
        assert child["parent_id"] == body["id"]
        assert {h["vid"] for h in child["hubs"]} >= {0, 3}

    def test_zoom_subset_non_hub_rejected(self, client):
        body = run_sq1(client)
        r = client.post("/zoom", json={"ha_id": body["id"], "mode": "subset",
                                       "vertices": [0, 29]})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "query_error"
