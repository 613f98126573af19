"""Command-line entry points.

``serve`` hosts the HTTP API; everything else runs directly against the
store and core library with no service involved.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import click

from . import evaluation
from .errors import SceneBeliefError
from .planner import load_trace
from .scene import load_scene

STUDY_SCENE_ID = "study_map"


def study_map_text() -> str:
    return (resources.files("scenebelief") / "data" / "study_map.json").read_text()


def _open_store(store_path: str):
    from .store import Store

    return Store(store_path)


def _resolve_scene(store, scene_ref: str):
    """Accept either a bundle file path or a scene id already in the store."""
    path = Path(scene_ref)
    if path.is_file():
        return load_scene(path.read_text())
    return store.get_scene(scene_ref)


@click.group()
def main():
    """Elicit object-location beliefs and score them in plan simulations."""


@main.command()
@click.option("--port", envvar="UES_PORT", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--store", "store_path", envvar="UES_STORE", default="./sb-store", show_default=True
)
@click.option(
    "--scene",
    "scene_paths",
    multiple=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Extra scene bundle files to register (id = file stem).",
)
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None)
def serve(port: int, host: str, store_path: str, scene_paths: tuple[str, ...], ui_dir: str | None):
    """Run the HTTP service (registers the bundled study map on startup)."""
    import uvicorn

    from .api import create_app

    store = _open_store(store_path)
    store.add_scene(STUDY_SCENE_ID, load_scene(study_map_text()))
    for sp in scene_paths:
        p = Path(sp)
        store.add_scene(p.stem, load_scene(p.read_text()))
    app = create_app(store, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command("validate-map")
@click.argument("bundle", type=click.Path(exists=True, dir_okay=False))
def validate_map(bundle: str):
    """Parse and validate a scene bundle file."""
    try:
        scene = load_scene(Path(bundle).read_text())
    except SceneBeliefError as exc:
        click.echo(f"invalid ({exc.code}): {exc.message}", err=True)
        sys.exit(1)
    click.echo(
        f"ok: {scene.map.width}x{scene.map.height} map, {len(scene.areas)} areas, "
        f"{len(scene.waypoints)} waypoints, {len(scene.nav_edges)} edges"
    )


@main.command("gen-truth")
@click.argument("scene_ref")
@click.option("--n", "n_locations", default=evaluation.DEFAULT_N_LOCATIONS, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--candidates", default=None, help="Comma-separated waypoint ids (default: all).")
@click.option("--store", "store_path", envvar="UES_STORE", default="./sb-store", show_default=True)
@click.option("--id", "truth_id", default=None, help="Truth id in the store (default: truth-<seed>).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write to this file.")
def gen_truth(
    scene_ref: str,
    n_locations: int,
    seed: int,
    candidates: str | None,
    store_path: str,
    truth_id: str | None,
    out: str | None,
):
    """Sample a ground-truth distribution for the delivery objects."""
    store = _open_store(store_path)
    try:
        scene = _resolve_scene(store, scene_ref)
        cand = (
            [c.strip() for c in candidates.split(",") if c.strip()]
            if candidates
            else list(scene.waypoint_ids)
        )
        truth = evaluation.gen_ground_truth(scene, cand, n_locations, seed)
    except SceneBeliefError as exc:
        click.echo(f"error ({exc.code}): {exc.message}", err=True)
        sys.exit(1)
    truth_id = truth_id or f"truth-{seed}"
    store.save_truth(truth_id, truth)
    text = json.dumps(evaluation.truth_to_dict(truth), sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    click.echo(f"saved truth {truth_id!r}")
    click.echo(text, nl=False)


@main.command()
@click.argument("session_id")
@click.argument("truth_id")
@click.option("--sims", default=evaluation.DEFAULT_N_SIMS, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--store", "store_path", envvar="UES_STORE", default="./sb-store", show_default=True)
def simulate(session_id: str, truth_id: str, sims: int, seed: int, store_path: str):
    """Score one submitted session against a stored truth (no service)."""
    from .api import run_simulation

    store = _open_store(store_path)
    try:
        row = run_simulation(store, session_id, truth_id, sims, seed)
    except SceneBeliefError as exc:
        click.echo(f"error ({exc.code}): {exc.message}", err=True)
        sys.exit(1)
    click.echo(json.dumps(row, sort_keys=True, indent=2))


@main.command()
@click.option("--all", "score_all", is_flag=True, help="Score every submitted session.")
@click.option("--truth", "truth_id", required=True)
@click.option("--sims", default=evaluation.DEFAULT_N_SIMS, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--store", "store_path", envvar="UES_STORE", default="./sb-store", show_default=True)
@click.option("--out-csv", type=click.Path(dir_okay=False), default=None)
@click.option("--out-json", type=click.Path(dir_okay=False), default=None)
def score(
    score_all: bool,
    truth_id: str,
    sims: int,
    seed: int,
    store_path: str,
    out_csv: str | None,
    out_json: str | None,
):
    """Batch-score submitted sessions into a CSV report plus JSON aggregate."""
    from .api import run_simulation

    if not score_all:
        click.echo("nothing to do: pass --all", err=True)
        sys.exit(1)
    store = _open_store(store_path)
    rows = []
    try:
        for session_id in store.list_sessions():
            session = store.get_session(session_id)
            if session.state != "submitted":
                continue
            doc = run_simulation(store, session_id, truth_id, sims, seed)
            rows.append(
                evaluation.SessionScore(
                    session_id=doc["session_id"],
                    interface=doc["interface"],
                    mean_trace_length=doc["mean_trace_length"],
                    accuracy=doc["accuracy"],
                    rank_discrepancy=doc["rank_discrepancy"],
                    duration_s=doc["duration_s"],
                    n_sims=doc["n_sims"],
                    rng_seed=doc["rng_seed"],
                )
            )
    except SceneBeliefError as exc:
        click.echo(f"error ({exc.code}): {exc.message}", err=True)
        sys.exit(1)
    if not rows:
        click.echo("no submitted sessions in store", err=True)
        sys.exit(1)
    csv_text = evaluation.report_csv(rows)
    agg = evaluation.aggregate_to_dict(evaluation.aggregate_report(rows))
    if out_csv:
        Path(out_csv).write_text(csv_text)
    if out_json:
        Path(out_json).write_text(json.dumps(agg, sort_keys=True, indent=2) + "\n")
    click.echo(csv_text, nl=False)
    click.echo(json.dumps(agg, sort_keys=True, indent=2))


@main.command()
@click.argument("trace", type=click.Path(exists=True, dir_okay=False))
def replay(trace: str):
    """Pretty-print a JSONL plan trace."""
    try:
        with open(trace) as fp:
            plan = load_trace(fp)
    except SceneBeliefError as exc:
        click.echo(f"error ({exc.code}): {exc.message}", err=True)
        sys.exit(1)
    for i, action in enumerate(plan.actions):
        from .planner import action_to_dict

        doc = action_to_dict(i, action)
        click.echo(f"{i:4d}  {doc['action']:<8s} {' '.join(str(a) for a in doc['args'])}")
    click.echo(f"trace length (moves + picks + places): {plan.length}")


if __name__ == "__main__":
    main()
