"""File-backed document store for scenes, sessions, truths, and reports.

Single-operator tool, so documents live as JSON files under one root.
Every write goes through write-temp-then-rename, so a crash mid-write
leaves either the old document or the new one, never a torn file.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    SessionConflict,
    UnknownScene,
    UnknownSession,
    UnknownTruth,
    ValidationFailure,
)
from .evaluation import GroundTruth, SessionScore, truth_from_dict, truth_to_dict
from .insight import INTERFACE_TAGS
from .scene import SceneBundle, scene_from_dict, scene_to_dict


@dataclass
class Session:
    id: str
    scene_id: str
    interface: str
    state: str = "open"  # open | submitted
    created_at: float = 0.0
    submitted_at: float | None = None
    insights: dict[str, dict] = field(default_factory=dict)  # object id -> payload doc

    @property
    def duration_s(self) -> float:
        if self.submitted_at is None:
            return 0.0
        return self.submitted_at - self.created_at

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "scene_id": self.scene_id,
            "interface": self.interface,
            "state": self.state,
            "created_at": self.created_at,
            "submitted_at": self.submitted_at,
            "insights": self.insights,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Session":
        return cls(
            id=doc["id"],
            scene_id=doc["scene_id"],
            interface=doc["interface"],
            state=doc["state"],
            created_at=doc["created_at"],
            submitted_at=doc.get("submitted_at"),
            insights=dict(doc.get("insights", {})),
        )


def atomic_write_json(path: Path, doc: object) -> None:
    """Serialize to a temp file in the same directory, then rename over."""
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fp:
            fp.write(text)
            fp.flush()
            os.fsync(fp.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Store:
    """Document store rooted at a directory; survives process restart."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        for sub in ("scenes", "sessions", "truths", "reports"):
            (self.root / sub).mkdir(parents=True, exist_ok=True)
        self._scene_cache: dict[str, SceneBundle] = {}
        self._lock = threading.Lock()  # serializes per-session writes

    # scenes

    def add_scene(self, scene_id: str, scene: SceneBundle) -> None:
        atomic_write_json(self.root / "scenes" / f"{scene_id}.json", scene_to_dict(scene))
        self._scene_cache[scene_id] = scene

    def list_scenes(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "scenes").glob("*.json"))

    def get_scene(self, scene_id: str) -> SceneBundle:
        if scene_id not in self._scene_cache:
            path = self.root / "scenes" / f"{scene_id}.json"
            if not path.exists():
                raise UnknownScene(f"no scene {scene_id!r}")
            self._scene_cache[scene_id] = scene_from_dict(json.loads(path.read_text()))
        return self._scene_cache[scene_id]

    # sessions

    def create_session(self, scene_id: str, interface: str) -> Session:
        self.get_scene(scene_id)
        if interface not in INTERFACE_TAGS:
            raise ValidationFailure(f"unknown interface {interface!r}")
        session = Session(
            id=uuid.uuid4().hex,
            scene_id=scene_id,
            interface=interface,
            created_at=time.time(),
        )
        self._write_session(session)
        return session

    def get_session(self, session_id: str) -> Session:
        path = self.root / "sessions" / f"{session_id}.json"
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        return Session.from_dict(json.loads(path.read_text()))

    def list_sessions(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "sessions").glob("*.json"))

    def put_insight(self, session_id: str, object_id: str, payload: dict) -> Session:
        with self._lock:
            session = self.get_session(session_id)
            if session.state != "open":
                raise SessionConflict(f"session {session_id!r} already submitted")
            session.insights[object_id] = payload
            self._write_session(session)
            return session

    def submit_session(self, session_id: str) -> Session:
        with self._lock:
            session = self.get_session(session_id)
            if session.state != "open":
                raise SessionConflict(f"session {session_id!r} already submitted")
            session.state = "submitted"
            session.submitted_at = time.time()
            self._write_session(session)
            return session

    def _write_session(self, session: Session) -> None:
        atomic_write_json(self.root / "sessions" / f"{session.id}.json", session.to_dict())

    # ground truths

    def save_truth(self, truth_id: str, truth: GroundTruth) -> None:
        atomic_write_json(self.root / "truths" / f"{truth_id}.json", truth_to_dict(truth))

    def get_truth(self, truth_id: str) -> GroundTruth:
        path = self.root / "truths" / f"{truth_id}.json"
        if not path.exists():
            raise UnknownTruth(f"no ground truth {truth_id!r}")
        return truth_from_dict(json.loads(path.read_text()))

    def list_truths(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "truths").glob("*.json"))

    # report rows, idempotent under retry

    @staticmethod
    def report_key(session_id: str, truth_id: str, n_sims: int, rng_seed: int) -> str:
        return f"{session_id}__{truth_id}__{n_sims}__{rng_seed}"

    def save_report_row(self, truth_id: str, row: SessionScore) -> None:
        key = self.report_key(row.session_id, truth_id, row.n_sims, row.rng_seed)
        doc = {
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
        atomic_write_json(self.root / "reports" / f"{key}.json", doc)

    def list_report_rows(self) -> list[dict]:
        rows = []
        for path in sorted((self.root / "reports").glob("*.json")):
            rows.append(json.loads(path.read_text()))
        return rows
