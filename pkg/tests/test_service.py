import json
import os

import pytest
from fastapi.testclient import TestClient

from scenebelief.api import create_app, run_simulation
from scenebelief.cli import STUDY_SCENE_ID, study_map_text
from scenebelief.errors import UnknownSession
from scenebelief.evaluation import gen_ground_truth
from scenebelief.scene import load_scene
from scenebelief.store import Store, atomic_write_json


@pytest.fixture()
def store(tmp_path):
    s = Store(tmp_path / "store")
    s.add_scene(STUDY_SCENE_ID, load_scene(study_map_text()))
    return s


@pytest.fixture()
def client(store):
    return TestClient(create_app(store))


PRECISION_PAYLOAD = {
    "object_id": "umbrella",
    "interface": "precision",
    "points": [{"x": 16.0, "y": 74.0, "slider": 0.8}, {"x": 60.0, "y": 70.0, "slider": 0.2}],
}
BAG_PAYLOAD = {
    "object_id": "bag",
    "interface": "precision",
    "points": [{"x": 96.0, "y": 62.0, "slider": 0.9}],
}


def make_submitted_session(client, interface="precision", payloads=None):
    resp = client.post("/api/sessions", json={"scene_id": STUDY_SCENE_ID, "interface": interface})
    assert resp.status_code == 201
    sid = resp.json()["id"]
    for payload in payloads or [PRECISION_PAYLOAD, BAG_PAYLOAD]:
        put = client.put(f"/api/sessions/{sid}/insight/{payload['object_id']}", json=payload)
        assert put.status_code == 200
    assert client.post(f"/api/sessions/{sid}/submit").status_code == 200
    return sid


class TestScenes:
    def test_list_contains_study_map(self, client):
        ids = [s["id"] for s in client.get("/api/scenes").json()]
        assert STUDY_SCENE_ID in ids

    def test_get_scene_document(self, client):
        doc = client.get(f"/api/scenes/{STUDY_SCENE_ID}").json()
        assert doc["map"]["width"] == 120
        assert any(a["id"] == "meeting_room" for a in doc["areas"])

    def test_unknown_scene_404(self, client):
        assert client.get("/api/scenes/nope").status_code == 404


class TestSessions:
    def test_create_with_unknown_scene(self, client):
        resp = client.post("/api/sessions", json={"scene_id": "nope", "interface": "rank"})
        assert resp.status_code == 404
        assert resp.json()["code"] == "unknown_scene"

    def test_insight_round_trip(self, client):
        resp = client.post(
            "/api/sessions", json={"scene_id": STUDY_SCENE_ID, "interface": "precision"}
        )
        sid = resp.json()["id"]
        client.put(f"/api/sessions/{sid}/insight/umbrella", json=PRECISION_PAYLOAD)
        got = client.get(f"/api/sessions/{sid}/insight/umbrella").json()
        assert got == PRECISION_PAYLOAD

    def test_interface_mismatch_rejected(self, client):
        resp = client.post("/api/sessions", json={"scene_id": STUDY_SCENE_ID, "interface": "rank"})
        sid = resp.json()["id"]
        put = client.put(f"/api/sessions/{sid}/insight/umbrella", json=PRECISION_PAYLOAD)
        assert put.status_code == 422

    def test_resubmit_conflicts(self, client):
        sid = make_submitted_session(client)
        resp = client.post(f"/api/sessions/{sid}/submit")
        assert resp.status_code == 409
        assert resp.json()["code"] == "session_conflict"

    def test_write_after_submit_conflicts(self, client):
        sid = make_submitted_session(client)
        put = client.put(f"/api/sessions/{sid}/insight/umbrella", json=PRECISION_PAYLOAD)
        assert put.status_code == 409

    def test_malformed_payload_rejected(self, client):
        resp = client.post(
            "/api/sessions", json={"scene_id": STUDY_SCENE_ID, "interface": "precision"}
        )
        sid = resp.json()["id"]
        bad = {"object_id": "umbrella", "interface": "precision", "points": [{"x": 1, "y": 1, "slider": 7}]}
        assert client.put(f"/api/sessions/{sid}/insight/umbrella", json=bad).status_code == 422


class TestSimulate:
    def test_deterministic_simulation(self, client, store):
        sid = make_submitted_session(client)
        store.save_truth("t1", gen_ground_truth(store.get_scene(STUDY_SCENE_ID),
                                                store.get_scene(STUDY_SCENE_ID).waypoint_ids, 3, 42))
        body = {"session_id": sid, "truth_id": "t1", "n_sims": 50, "seed": 9}
        first = client.post("/api/simulate", json=body).json()
        second = client.post("/api/simulate", json=body).json()
        assert first == second
        assert first["mean_trace_length"] > 0
        assert 0.0 <= first["accuracy"] <= 1.0

    def test_unsubmitted_session_rejected(self, client, store):
        resp = client.post("/api/sessions", json={"scene_id": STUDY_SCENE_ID, "interface": "precision"})
        sid = resp.json()["id"]
        store.save_truth("t1", gen_ground_truth(store.get_scene(STUDY_SCENE_ID),
                                                store.get_scene(STUDY_SCENE_ID).waypoint_ids, 3, 1))
        resp = client.post("/api/simulate", json={"session_id": sid, "truth_id": "t1"})
        assert resp.status_code == 422

    def test_zero_sims_rejected(self, client, store):
        sid = make_submitted_session(client)
        store.save_truth("t1", gen_ground_truth(store.get_scene(STUDY_SCENE_ID),
                                                store.get_scene(STUDY_SCENE_ID).waypoint_ids, 3, 1))
        resp = client.post(
            "/api/simulate", json={"session_id": sid, "truth_id": "t1", "n_sims": 0}
        )
        assert resp.status_code == 422

    def test_unknown_truth_404(self, client):
        sid = make_submitted_session(client)
        resp = client.post("/api/simulate", json={"session_id": sid, "truth_id": "ghost"})
        assert resp.status_code == 404

    def test_reports_listed(self, client, store):
        sid = make_submitted_session(client)
        store.save_truth("t1", gen_ground_truth(store.get_scene(STUDY_SCENE_ID),
                                                store.get_scene(STUDY_SCENE_ID).waypoint_ids, 3, 2))
        client.post("/api/simulate", json={"session_id": sid, "truth_id": "t1", "seed": 3})
        rows = client.get("/api/reports").json()
        assert any(r["session_id"] == sid and r["truth_id"] == "t1" for r in rows)


class TestStore:
    def test_survives_restart(self, tmp_path):
        root = tmp_path / "store"
        store = Store(root)
        store.add_scene(STUDY_SCENE_ID, load_scene(study_map_text()))
        session = store.create_session(STUDY_SCENE_ID, "rank")
        reopened = Store(root)
        assert reopened.get_session(session.id).scene_id == STUDY_SCENE_ID

    def test_unknown_session(self, store):
        with pytest.raises(UnknownSession):
            store.get_session("missing")

    def test_atomic_write_keeps_old_on_failure(self, tmp_path, monkeypatch):
        target = tmp_path / "doc.json"
        atomic_write_json(target, {"v": 1})

        def boom(src, dst):
            raise OSError("simulated crash")

        monkeypatch.setattr(os, "replace", boom)
        with pytest.raises(OSError):
            atomic_write_json(target, {"v": 2})
        monkeypatch.undo()
        assert json.loads(target.read_text()) == {"v": 1}
        assert list(tmp_path.glob("*.tmp")) == []
