"""HTTP JSON API over the store plus the scoring pipeline.

The service is fully usable without any UI assets; when a built frontend
directory is supplied it is mounted at the web root.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import evaluation
from .errors import SceneBeliefError, ValidationFailure
from .insight import parse_payload
from .planner import default_task
from .scene import scene_to_dict, voronoi_assign
from .store import Session, Store

_NOT_FOUND = {"unknown_scene", "unknown_session", "unknown_truth", "unknown_waypoint", "unknown_area"}


class SessionCreate(BaseModel):
    scene_id: str
    interface: str


class SimulateRequest(BaseModel):
    session_id: str
    truth_id: str
    n_sims: int = Field(default=evaluation.DEFAULT_N_SIMS)
    seed: int = 0


def _session_doc(session: Session) -> dict:
    doc = session.to_dict()
    doc["duration_s"] = session.duration_s
    return doc


def create_app(store: Store, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="scenebelief", docs_url=None, redoc_url=None)

    @app.exception_handler(SceneBeliefError)
    async def _handle_domain_error(request: Request, exc: SceneBeliefError):
        if exc.code in _NOT_FOUND:
            status = 404
        elif exc.code == "session_conflict":
            status = 409
        else:
            status = 422
        return JSONResponse(status_code=status, content={"code": exc.code, "message": exc.message})

    @app.get("/api/scenes")
    def list_scenes():
        out = []
        for scene_id in store.list_scenes():
            scene = store.get_scene(scene_id)
            out.append(
                {
                    "id": scene_id,
                    "width": scene.map.width,
                    "height": scene.map.height,
                    "n_waypoints": len(scene.waypoints),
                }
            )
        return out

    @app.get("/api/scenes/{scene_id}")
    def get_scene(scene_id: str):
        doc = scene_to_dict(store.get_scene(scene_id))
        doc["id"] = scene_id
        return doc

    @app.post("/api/sessions", status_code=201)
    def create_session(body: SessionCreate):
        return _session_doc(store.create_session(body.scene_id, body.interface))

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_doc(store.get_session(session_id))

    @app.get("/api/sessions/{session_id}/insight/{object_id}")
    def get_insight(session_id: str, object_id: str):
        session = store.get_session(session_id)
        if object_id not in session.insights:
            return JSONResponse(
                status_code=404,
                content={"code": "empty_insight", "message": f"no insight for {object_id!r}"},
            )
        return session.insights[object_id]

    @app.put("/api/sessions/{session_id}/insight/{object_id}")
    def put_insight(session_id: str, object_id: str, payload: dict):
        session = store.get_session(session_id)
        parsed = parse_payload(payload)
        if payload.get("interface") != session.interface:
            raise ValidationFailure(
                f"payload interface {payload.get('interface')!r} does not match "
                f"session interface {session.interface!r}"
            )
        if parsed.object_id != object_id:
            raise ValidationFailure("payload object_id does not match URL")
        store.put_insight(session_id, object_id, payload)
        return payload

    @app.post("/api/sessions/{session_id}/submit")
    def submit(session_id: str):
        return _session_doc(store.submit_session(session_id))

    @app.post("/api/simulate")
    def simulate(body: SimulateRequest):
        row = run_simulation(store, body.session_id, body.truth_id, body.n_sims, body.seed)
        return row

    @app.get("/api/reports")
    def reports():
        return store.list_report_rows()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def run_simulation(
    store: Store, session_id: str, truth_id: str, n_sims: int, seed: int
) -> dict:
    """Score one submitted session against one stored truth and persist the
    row. Shared by the API endpoint and the CLI so both produce identical
    results on identical inputs."""
    session = store.get_session(session_id)
    if session.state != "submitted":
        raise ValidationFailure(f"session {session_id!r} is not submitted")
    if not session.insights:
        raise ValidationFailure(f"session {session_id!r} has no insight payloads")
    scene = store.get_scene(session.scene_id)
    truth = store.get_truth(truth_id)
    insights = {obj: parse_payload(doc) for obj, doc in session.insights.items()}
    row = evaluation.score_session(
        session_id=session.id,
        interface=session.interface,
        scene=scene,
        task=default_task(scene),
        insights=insights,
        truth=truth,
        duration_s=session.duration_s,
        n_sims=n_sims,
        rng_seed=seed,
        assignment=voronoi_assign(scene),
    )
    store.save_report_row(truth_id, row)
    return {
        "session_id": row.session_id,
        "truth_id": truth_id,
        "interface": row.interface,
        "mean_trace_length": row.mean_trace_length,
        "accuracy": row.accuracy,
        "rank_discrepancy": row.rank_discrepancy,
        "duration_s": row.duration_s,
        "n_sims": row.n_sims,
        "rng_seed": row.rng_seed,
    }
