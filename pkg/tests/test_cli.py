import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from scenebelief.cli import STUDY_SCENE_ID, main, study_map_text
from scenebelief.evaluation import gen_ground_truth
from scenebelief.scene import load_scene
from scenebelief.store import Session, Store, atomic_write_json

GOLDEN_CSV = Path(__file__).parent / "data" / "golden_report.csv"

FIXTURE_SESSIONS = [
    Session(
        id="fx-precision",
        scene_id=STUDY_SCENE_ID,
        interface="precision",
        state="submitted",
        created_at=1000.0,
        submitted_at=1151.5,
        insights={
            "umbrella": {
                "object_id": "umbrella",
                "interface": "precision",
                "points": [
                    {"x": 16.0, "y": 74.0, "slider": 0.7},
                    {"x": 28.0, "y": 58.0, "slider": 0.2},
                ],
            },
            "bag": {
                "object_id": "bag",
                "interface": "precision",
                "points": [{"x": 96.0, "y": 62.0, "slider": 0.9}],
            },
        },
    ),
    Session(
        id="fx-paint",
        scene_id=STUDY_SCENE_ID,
        interface="paint",
        state="submitted",
        created_at=1000.0,
        submitted_at=1140.7,
        insights={
            "umbrella": {
                "object_id": "umbrella",
                "interface": "paint",
                "paint": [
                    {"x": 16, "y": 74, "b": 1.0},
                    {"x": 17, "y": 74, "b": 0.8},
                    {"x": 60, "y": 70, "b": 0.4},
                ],
            },
            "bag": {
                "object_id": "bag",
                "interface": "paint",
                "paint": [{"x": 96, "y": 62, "b": 0.9}, {"x": 112, "y": 58, "b": 0.3}],
            },
        },
    ),
    Session(
        id="fx-rank",
        scene_id=STUDY_SCENE_ID,
        interface="rank",
        state="submitted",
        created_at=1000.0,
        submitted_at=1108.8,
        insights={
            "umbrella": {
                "object_id": "umbrella",
                "interface": "rank",
                "points": [{"x": 16.0, "y": 74.0}, {"x": 60.0, "y": 70.0}],
            },
            "bag": {
                "object_id": "bag",
                "interface": "rank",
                "points": [{"x": 96.0, "y": 62.0}],
            },
        },
    ),
]


def build_fixture_store(root) -> Store:
    """Store with deterministic sessions (fixed ids and timestamps) plus a
    seeded truth, so batch scoring output is reproducible byte-for-byte."""
    store = Store(root)
    scene = load_scene(study_map_text())
    store.add_scene(STUDY_SCENE_ID, scene)
    for session in FIXTURE_SESSIONS:
        atomic_write_json(Path(root) / "sessions" / f"{session.id}.json", session.to_dict())
    store.save_truth("fx-truth", gen_ground_truth(scene, scene.waypoint_ids, 3, 2024))
    return store


@pytest.fixture()
def runner():
    return CliRunner()


class TestValidateMap:
    def test_bundled_map_ok(self, runner, tmp_path):
        bundle = tmp_path / "study.json"
        bundle.write_text(study_map_text())
        result = runner.invoke(main, ["validate-map", str(bundle)])
        assert result.exit_code == 0
        assert "ok:" in result.output

    def test_broken_map_fails(self, runner, tmp_path):
        bundle = tmp_path / "bad.json"
        bundle.write_text('{"map": {"width": 0}}')
        result = runner.invoke(main, ["validate-map", str(bundle)])
        assert result.exit_code == 1
        assert "invalid" in result.output


class TestGenTruth:
    def test_same_seed_byte_identical(self, runner, tmp_path):
        bundle = tmp_path / "study.json"
        bundle.write_text(study_map_text())
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            result = runner.invoke(
                main,
                [
                    "gen-truth", str(bundle),
                    "--n", "3", "--seed", "7",
                    "--store", str(tmp_path / "store"),
                    "--out", str(out),
                ],
            )
            assert result.exit_code == 0, result.output
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_truth_lands_in_store(self, runner, tmp_path):
        bundle = tmp_path / "study.json"
        bundle.write_text(study_map_text())
        result = runner.invoke(
            main,
            ["gen-truth", str(bundle), "--seed", "3", "--store", str(tmp_path / "store"), "--id", "t3"],
        )
        assert result.exit_code == 0
        assert Store(tmp_path / "store").get_truth("t3") is not None


class TestSimulate:
    def test_simulate_prints_row(self, runner, tmp_path):
        store_root = tmp_path / "store"
        build_fixture_store(store_root)
        result = runner.invoke(
            main,
            ["simulate", "fx-precision", "fx-truth", "--sims", "20", "--seed", "5",
             "--store", str(store_root)],
        )
        assert result.exit_code == 0, result.output
        row = json.loads(result.output)
        assert row["session_id"] == "fx-precision"
        assert row["n_sims"] == 20

    def test_unknown_session_exits_nonzero(self, runner, tmp_path):
        store_root = tmp_path / "store"
        build_fixture_store(store_root)
        result = runner.invoke(
            main, ["simulate", "ghost", "fx-truth", "--store", str(store_root)]
        )
        assert result.exit_code == 1
        assert "unknown_session" in result.output


class TestScore:
    def test_score_all_matches_golden(self, runner, tmp_path):
        store_root = tmp_path / "store"
        build_fixture_store(store_root)
        out_csv = tmp_path / "report.csv"
        result = runner.invoke(
            main,
            ["score", "--all", "--truth", "fx-truth", "--sims", "50", "--seed", "0",
             "--store", str(store_root), "--out-csv", str(out_csv)],
        )
        assert result.exit_code == 0, result.output
        assert out_csv.read_text() == GOLDEN_CSV.read_text()

    def test_score_without_all_flag(self, runner, tmp_path):
        result = runner.invoke(main, ["score", "--truth", "t", "--store", str(tmp_path / "s")])
        assert result.exit_code == 1


class TestReplay:
    def test_replay_prints_actions(self, runner, tmp_path):
        trace = tmp_path / "trace.jsonl"
        trace.write_text(
            '{"t": 0, "action": "move", "args": ["a", "b"]}\n'
            '{"t": 1, "action": "observe", "args": ["b"]}\n'
            '{"t": 2, "action": "pick", "args": ["umbrella", "b"]}\n'
        )
        result = runner.invoke(main, ["replay", str(trace)])
        assert result.exit_code == 0
        assert "pick" in result.output
        assert "trace length" in result.output
        assert result.output.strip().endswith("2")

    def test_replay_bad_file(self, runner, tmp_path):
        trace = tmp_path / "trace.jsonl"
        trace.write_text('{"action": "fly", "args": []}\n')
        result = runner.invoke(main, ["replay", str(trace)])
        assert result.exit_code == 1
