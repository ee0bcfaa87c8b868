import json

import pytest
from fastapi.testclient import TestClient

from captioncheck.service import (MAX_POINTS, SESSION_CAPACITY, ServiceSettings,
                                  Session, SessionStore, create_app)
from captioncheck import ChartSpec, TimeSeries

CSV = "date,value\n2000-01-01,1\n2000-01-02,3\n2000-01-03,1\n"
SERIES_JSON = {"points": [{"t": "2000-01-01", "y": 1},
                          {"t": "2000-01-02", "y": 3},
                          {"t": "2000-01-03", "y": 1}],
               "name": "demo"}


@pytest.fixture()
def client():
    return TestClient(create_app())


def upload(client, body=CSV, content_type="text/csv"):
    resp = client.post("/api/series", content=body,
                       headers={"content-type": content_type})
    assert resp.status_code == 200, resp.text
    return resp.json()


class TestUpload:
    def test_csv_upload(self, client):
        data = upload(client)
        assert data["pointCount"] == 3
        assert data["granularity"] == "day"
        assert data["defaultSpec"]["xRange"] == ["2000-01-01", "2000-01-03"]
        assert data["sessionId"]

    def test_json_upload(self, client):
        data = upload(client, json.dumps(SERIES_JSON), "application/json")
        assert data["pointCount"] == 3

    def test_json_sniffed_without_content_type(self, client):
        data = upload(client, json.dumps(SERIES_JSON), "text/plain")
        assert data["pointCount"] == 3

    def test_bad_csv_is_400(self, client):
        resp = client.post("/api/series", content="not,a,series\nx,y,z\n")
        assert resp.status_code == 400
        assert "error" in resp.json()

    def test_bad_json_is_400(self, client):
        resp = client.post("/api/series", content='{"points": "nope"}',
                           headers={"content-type": "application/json"})
        assert resp.status_code == 400

    def test_single_point_is_400(self, client):
        resp = client.post("/api/series", content="2000-01-01,1\n")
        assert resp.status_code == 400

    def test_oversized_series_is_413(self, client, monkeypatch):
        monkeypatch.setattr("captioncheck.service.MAX_POINTS", 2)
        resp = client.post("/api/series", content=CSV)
        assert resp.status_code == 413


class TestCheck:
    def test_clean_check(self, client):
        sid = upload(client)["sessionId"]
        resp = client.post(f"/api/sessions/{sid}/check",
                           json={"caption": "The value peaked on January 2, 2000."})
        assert resp.status_code == 200
        data = resp.json()
        assert data["diagnostics"] == []
        assert data["references"][0]["target"] == {"kind": "point", "index": 1}

    def test_unknown_session_404(self, client):
        resp = client.post("/api/sessions/nope/check", json={"caption": "x"})
        assert resp.status_code == 404

    def test_missing_caption_400(self, client):
        sid = upload(client)["sessionId"]
        resp = client.post(f"/api/sessions/{sid}/check", json={"note": "hi"})
        assert resp.status_code == 400

    def test_non_json_body_400(self, client):
        sid = upload(client)["sessionId"]
        resp = client.post(f"/api/sessions/{sid}/check", content="caption=x")
        assert resp.status_code == 400

    def test_spec_override_applies(self, client):
        sid = upload(client)["sessionId"]
        spec = {"plotWidth": 400, "plotHeight": 300,
                "xRange": ["2000-01-01", "2000-01-02"],
                "yRange": [0, 4]}
        resp = client.post(f"/api/sessions/{sid}/check",
                           json={"caption": "It rose.", "spec": spec})
        assert resp.status_code == 200
        feats = resp.json()["features"]
        # only two points remain visible, so a single trend feature exists
        assert len(feats) == 1
        assert feats[0]["kind"] == "trend"

    def test_bad_spec_400(self, client):
        sid = upload(client)["sessionId"]
        resp = client.post(f"/api/sessions/{sid}/check",
                           json={"caption": "x", "spec": {"plotWidth": -5}})
        assert resp.status_code == 400

    def test_empty_window_422(self, client):
        sid = upload(client)["sessionId"]
        spec = {"plotWidth": 400, "plotHeight": 300,
                "xRange": ["1990-01-01", "1990-12-31"],
                "yRange": [0, 4]}
        resp = client.post(f"/api/sessions/{sid}/check",
                           json={"caption": "x", "spec": spec})
        assert resp.status_code == 422

    def test_factual_error_reported(self, client):
        csv = "date,value\n2000-01-01,5\n2001-01-01,3\n2002-01-01,1\n"
        sid = upload(client, csv)["sessionId"]
        resp = client.post(f"/api/sessions/{sid}/check",
                           json={"caption": "Prices rose from 2000 to 2002."})
        data = resp.json()
        assert [d["kind"] for d in data["diagnostics"]] == ["factual"]
        assert data["references"][0]["factualError"] is True


class TestFeaturesEndpoint:
    def test_features_for_session(self, client):
        sid = upload(client)["sessionId"]
        resp = client.get(f"/api/sessions/{sid}/features")
        assert resp.status_code == 200
        feats = resp.json()["features"]
        assert feats[0]["kind"] == "point"
        assert feats[0]["rank"] == 1

    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/zzz/features").status_code == 404

    def test_spec_from_check_persists(self, client):
        sid = upload(client)["sessionId"]
        spec = {"plotWidth": 400, "plotHeight": 300,
                "xRange": ["2000-01-01", "2000-01-02"], "yRange": [0, 4]}
        client.post(f"/api/sessions/{sid}/check",
                    json={"caption": "x", "spec": spec})
        feats = client.get(f"/api/sessions/{sid}/features").json()["features"]
        assert len(feats) == 1


class TestSessionStore:
    def mksession(self, key):
        series = TimeSeries.from_csv(CSV)
        return Session(session_id=key, series=series,
                       spec=ChartSpec.default_for(series))

    def test_put_get(self):
        store = SessionStore(capacity=4)
        store.put(self.mksession("a"))
        assert store.get("a").session_id == "a"
        assert store.get("b") is None

    def test_eviction_drops_least_recently_used(self):
        store = SessionStore(capacity=2)
        store.put(self.mksession("a"))
        store.put(self.mksession("b"))
        store.get("a")                      # refresh "a"
        store.put(self.mksession("c"))      # evicts "b"
        assert store.get("a") is not None
        assert store.get("b") is None
        assert store.get("c") is not None

    def test_default_capacity(self):
        assert SessionStore()._capacity == SESSION_CAPACITY


class TestCors:
    def test_cors_header_present_when_configured(self):
        app = create_app(ServiceSettings(cors_origin="http://localhost:5173"))
        client = TestClient(app)
        resp = client.post("/api/series", content=CSV,
                           headers={"origin": "http://localhost:5173"})
        assert resp.headers.get("access-control-allow-origin") == "http://localhost:5173"

    def test_no_cors_by_default(self, client):
        resp = client.post("/api/series", content=CSV,
                           headers={"origin": "http://localhost:5173"})
        assert "access-control-allow-origin" not in resp.headers
