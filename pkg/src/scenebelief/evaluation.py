"""Ground-truth generation, accuracy metrics, and Monte-Carlo scoring.

Ground truths are small categorical distributions (three support waypoints
per object by default) sampled uniformly over the probability simplex.
Insight quality is measured three ways: cosine similarity between belief
and truth vectors over the full waypoint basis, Damerau-Levenshtein
discrepancy between rankings (with prefix truncation when the user covered
every truth location), and mean simulated trace length over seeded runs.
"""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyInsight, InsufficientCandidates, ValidationFailure
from .insight import (
    CategoricalBelief,
    InsightInput,
    WaypointRanking,
    belief_to_ranking,
    compile_insight,
)
from .planner import ObjectBelief, TaskSpec, WorldState, belief_from_insight, execute_with_replan
from .scene import SceneBundle, VoronoiAssignment, voronoi_assign

DEFAULT_N_LOCATIONS = 3
DEFAULT_N_SIMS = 50

TruthEntry = tuple[tuple[str, float], ...]  # (waypoint id, probability)


@dataclass(frozen=True)
class GroundTruth:
    """Per-object categorical distribution over waypoints."""

    objects: Mapping[str, TruthEntry]

    def __post_init__(self):
        object.__setattr__(self, "objects", MappingProxyType(dict(self.objects)))

    def entry(self, object_id: str) -> TruthEntry:
        if object_id not in self.objects:
            raise ValidationFailure(f"truth has no object {object_id!r}")
        return self.objects[object_id]


def validate_truth(truth: GroundTruth, scene: SceneBundle | None = None) -> None:
    for obj, entry in truth.objects.items():
        wids = [w for w, _ in entry]
        if len(set(wids)) != len(wids):
            raise ValidationFailure(f"truth for {obj!r} repeats a waypoint")
        total = sum(p for _, p in entry)
        if abs(total - 1.0) > 1e-9:
            raise ValidationFailure(f"truth for {obj!r} sums to {total}, not 1")
        if any(p < 0.0 for _, p in entry):
            raise ValidationFailure(f"truth for {obj!r} has a negative probability")
        if scene is not None:
            for w in wids:
                scene.waypoint(w)


def gen_ground_truth(
    scene: SceneBundle,
    candidate_waypoints: Sequence[str],
    n_locations: int,
    rng_seed: int,
    objects: Sequence[str] = ("umbrella", "bag"),
) -> GroundTruth:
    """Sample, per object, ``n_locations`` distinct candidate waypoints and a
    uniform-simplex likelihood vector (flat Dirichlet). Deterministic in the
    seed."""
    candidates = sorted(set(candidate_waypoints))
    for wid in candidates:
        scene.waypoint(wid)
    if len(candidates) < n_locations:
        raise InsufficientCandidates(
            f"need {n_locations} candidates, have {len(candidates)}"
        )
    if n_locations < 1:
        raise ValidationFailure("n_locations must be positive")
    rng = np.random.default_rng(rng_seed)
    entries: dict[str, TruthEntry] = {}
    for obj in objects:
        wids = rng.choice(candidates, size=n_locations, replace=False)
        probs = rng.dirichlet(np.ones(n_locations))
        entries[obj] = tuple((str(w), float(p)) for w, p in zip(wids, probs))
    return GroundTruth(entries)


def truth_ranking(entry: TruthEntry) -> list[str]:
    """Support sorted by descending probability; id breaks ties."""
    return [w for w, _ in sorted(entry, key=lambda wp: (-wp[1], wp[0]))]


def cosine_accuracy(
    belief: CategoricalBelief, entry: TruthEntry, waypoint_ids: Sequence[str]
) -> float:
    """Cosine similarity of belief and truth embedded over the full waypoint
    basis (zeros off-support)."""
    if not belief.probabilities:
        raise EmptyInsight("belief vectorizes to zero")
    index = {w: k for k, w in enumerate(waypoint_ids)}
    a = np.zeros(len(waypoint_ids))
    b = np.zeros(len(waypoint_ids))
    for w, p in belief.probabilities.items():
        a[index[w]] = p
    for w, p in entry:
        b[index[w]] = p
    denom = float(np.linalg.norm(a) * np.linalg.norm(b))
    if denom == 0.0:
        raise EmptyInsight("truth vectorizes to zero")
    return float(np.dot(a, b) / denom)


def dl_distance(a: Sequence, b: Sequence) -> int:
    """Optimal-string-alignment edit distance: insert, delete, substitute,
    adjacent transposition, no substring edited twice."""
    la, lb = len(a), len(b)
    # (la+1) x (lb+1) DP table; row i = prefix a[:i]
    prev2: list[int] = []
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if (
                i > 1
                and j > 1
                and a[i - 1] == b[j - 2]
                and a[i - 2] == b[j - 1]
            ):
                cur[j] = min(cur[j], prev2[j - 2] + 1)
        prev2, prev = prev, cur
    return prev[lb]


def rank_discrepancy(user: WaypointRanking, entry: TruthEntry) -> int:
    """Edit distance between the user's ranking and the truth ranking.

    When the user ranked every truth-support waypoint, only the shortest
    prefix of their ranking covering all of them is compared; rankings
    missing a truth location are compared whole.
    """
    if not user.ranked:
        raise EmptyInsight(f"empty ranking for {user.object_id!r}")
    truth = truth_ranking(entry)
    support = set(truth)
    processed = list(user.ranked)
    if support.issubset(processed):
        remaining = set(support)
        for k, w in enumerate(processed):
            remaining.discard(w)
            if not remaining:
                processed = processed[: k + 1]
                break
    return dl_distance(processed, truth)


def sample_world(truth: GroundTruth, rng: np.random.Generator) -> WorldState:
    """Draw each object's true waypoint independently from its distribution.

    Objects are drawn in sorted-id order so results depend only on the rng
    state, not mapping order.
    """
    locations = {}
    for obj in sorted(truth.objects):
        entry = truth.objects[obj]
        wids = [w for w, _ in entry]
        probs = np.array([p for _, p in entry])
        probs = probs / probs.sum()  # guard float drift
        locations[obj] = str(rng.choice(wids, p=probs))
    return WorldState(locations)


def score_insight(
    scene: SceneBundle,
    task: TaskSpec,
    insights: Mapping[str, InsightInput],
    truth: GroundTruth,
    n_sims: int = DEFAULT_N_SIMS,
    rng_seed: int = 0,
    assignment: VoronoiAssignment | None = None,
) -> float:
    """Mean trace length over ``n_sims`` simulations, each against a world
    sampled from the truth. Simulation i derives its own rng from
    (seed, i), so any execution order gives identical results."""
    if n_sims < 1:
        raise ValidationFailure("n_sims must be positive")
    if assignment is None:
        assignment = voronoi_assign(scene)
    beliefs: dict[str, ObjectBelief] = {}
    for obj, inp in insights.items():
        beliefs[obj] = belief_from_insight(compile_insight(inp, scene, assignment))
    lengths = [
        simulate_once(scene, task, beliefs, truth, rng_seed, i) for i in range(n_sims)
    ]
    return float(np.mean(lengths))


def simulate_once(
    scene: SceneBundle,
    task: TaskSpec,
    beliefs: Mapping[str, ObjectBelief],
    truth: GroundTruth,
    rng_seed: int,
    sim_index: int,
) -> int:
    """Trace length of simulation ``sim_index``; each simulation owns an rng
    derived from (seed, index), so scheduling cannot change the result."""
    rng = np.random.default_rng([rng_seed, sim_index])
    world = sample_world(truth, rng)
    return execute_with_replan(scene, task, beliefs, world).length


# --- session scoring and aggregation ---------------------------------------

@dataclass(frozen=True)
class SessionScore:
    session_id: str
    interface: str
    mean_trace_length: float
    accuracy: float | None  # undefined for rank sessions
    rank_discrepancy: int
    duration_s: float
    n_sims: int
    rng_seed: int


@dataclass(frozen=True)
class ScoreReport:
    rows: tuple[SessionScore, ...]
    aggregates: Mapping[str, Mapping[str, tuple[float, float]]]  # interface -> metric -> (mean, sd)

    def __post_init__(self):
        object.__setattr__(self, "aggregates", MappingProxyType(dict(self.aggregates)))


def score_session(
    session_id: str,
    interface: str,
    scene: SceneBundle,
    task: TaskSpec,
    insights: Mapping[str, InsightInput],
    truth: GroundTruth,
    duration_s: float,
    n_sims: int = DEFAULT_N_SIMS,
    rng_seed: int = 0,
    assignment: VoronoiAssignment | None = None,
) -> SessionScore:
    """One report row: planning score plus both accuracy measures.

    Accuracy averages over task objects; discrepancy sums over them (which
    keeps it an integer).
    """
    if assignment is None:
        assignment = voronoi_assign(scene)
    mean_length = score_insight(
        scene, task, insights, truth, n_sims=n_sims, rng_seed=rng_seed, assignment=assignment
    )
    accuracies = []
    discrepancy = 0
    for obj in sorted(insights):
        compiled = compile_insight(insights[obj], scene, assignment)
        entry = truth.entry(obj)
        if isinstance(compiled, CategoricalBelief):
            accuracies.append(cosine_accuracy(compiled, entry, scene.waypoint_ids))
            ranking = belief_to_ranking(compiled)
        else:
            ranking = compiled
        discrepancy += rank_discrepancy(ranking, entry)
    accuracy = float(np.mean(accuracies)) if accuracies else None
    return SessionScore(
        session_id=session_id,
        interface=interface,
        mean_trace_length=mean_length,
        accuracy=accuracy,
        rank_discrepancy=discrepancy,
        duration_s=duration_s,
        n_sims=n_sims,
        rng_seed=rng_seed,
    )


_AGG_METRICS = ("mean_trace_length", "accuracy", "rank_discrepancy", "duration_s")


def aggregate_report(rows: Sequence[SessionScore]) -> ScoreReport:
    """Per-interface mean and sample standard deviation for each metric."""
    if not rows:
        raise ValidationFailure("no rows to aggregate")
    by_interface: dict[str, list[SessionScore]] = {}
    for row in rows:
        by_interface.setdefault(row.interface, []).append(row)
    aggregates: dict[str, dict[str, tuple[float, float]]] = {}
    for interface, group in sorted(by_interface.items()):
        metrics: dict[str, tuple[float, float]] = {}
        for name in _AGG_METRICS:
            values = [getattr(r, name) for r in group if getattr(r, name) is not None]
            if not values:
                continue
            mean = statistics.fmean(values)
            sd = statistics.stdev(values) if len(values) > 1 else 0.0
            metrics[name] = (mean, sd)
        aggregates[interface] = metrics
    return ScoreReport(tuple(rows), aggregates)


def report_csv(rows: Sequence[SessionScore]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["session_id", "interface", "mean_trace_length", "accuracy", "rank_discrepancy", "duration_s"]
    )
    for r in rows:
        writer.writerow(
            [
                r.session_id,
                r.interface,
                f"{r.mean_trace_length:.6f}",
                "" if r.accuracy is None else f"{r.accuracy:.6f}",
                r.rank_discrepancy,
                f"{r.duration_s:.3f}",
            ]
        )
    return buf.getvalue()


def aggregate_to_dict(report: ScoreReport) -> dict:
    return {
        interface: {
            name: {"mean": mean, "sd": sd} for name, (mean, sd) in metrics.items()
        }
        for interface, metrics in report.aggregates.items()
    }


# --- truth file format -------------------------------------------------------

def truth_to_dict(truth: GroundTruth) -> dict:
    return {
        "objects": {
            obj: [{"waypoint": w, "p": p} for w, p in entry]
            for obj, entry in sorted(truth.objects.items())
        }
    }


def truth_from_dict(doc: dict) -> GroundTruth:
    try:
        entries = {
            str(obj): tuple((str(e["waypoint"]), float(e["p"])) for e in rows)
            for obj, rows in doc["objects"].items()
        }
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ValidationFailure(f"truth document malformed: {exc}") from exc
    truth = GroundTruth(entries)
    validate_truth(truth)
    return truth
