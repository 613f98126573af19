"""Determinize-and-replan pick-and-place simulator.

The robot assumes each object sits at its belief's most likely candidate,
plans shortest-path navigation plus pick/place, and executes. Whenever an
observation contradicts the current assumption it advances to the next
candidate and replans; once candidates run out it sweeps the nearest
unvisited waypoints until the object turns up. The classical-planning step
is specialized to shortest-path composition, which on this fixed
navigate/observe/pick/place domain is exactly the plan a forward planner
would emit from the determinized state.

Trace length (moves + picks + places, observation free) is the plan
quality score: shorter means the insight was better.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import IO, Mapping

from .errors import EmptyInsight, InsightExhausted, MalformedPayload
from .insight import CategoricalBelief, WaypointRanking, belief_to_ranking
from .scene import SceneBundle, shortest_path


@dataclass(frozen=True)
class TaskSpec:
    carried_object: str
    container_object: str
    start_waypoint: str


def default_task(
    scene: SceneBundle,
    carried: str = "umbrella",
    container: str = "bag",
    start: str | None = None,
) -> TaskSpec:
    """Standard delivery task: carry the umbrella to the bag.

    The bundled study map starts at its workspace corner; other scenes
    default to their lexicographically first waypoint unless told
    otherwise.
    """
    if start is None:
        start = "work_corner" if "work_corner" in scene.waypoint_ids else scene.waypoint_ids[0]
    scene.waypoint(start)
    return TaskSpec(carried_object=carried, container_object=container, start_waypoint=start)


@dataclass(frozen=True)
class ObjectBelief:
    """Ordered location candidates with a cursor at the current assumption.

    cursor == len(candidates) means the insight is exhausted and the
    planner falls back to sweeping unvisited waypoints.
    """

    object_id: str
    candidates: tuple[str, ...]
    cursor: int = 0

    def current(self) -> str:
        if self.cursor >= len(self.candidates):
            raise InsightExhausted(f"no candidates left for {self.object_id!r}")
        return self.candidates[self.cursor]


@dataclass(frozen=True)
class WorldState:
    object_locations: Mapping[str, str]


@dataclass(frozen=True)
class Move:
    src: str
    dst: str


@dataclass(frozen=True)
class Observe:
    at: str


@dataclass(frozen=True)
class Pick:
    obj: str
    at: str


@dataclass(frozen=True)
class Place:
    obj: str
    container: str
    at: str


Action = Move | Observe | Pick | Place


@dataclass(frozen=True)
class PlanTrace:
    actions: tuple[Action, ...]

    @property
    def length(self) -> int:
        return trace_length(self)


def trace_length(trace: PlanTrace) -> int:
    """Moves plus picks plus places; observation costs nothing."""
    return sum(1 for a in trace.actions if not isinstance(a, Observe))


def belief_from_insight(insight: CategoricalBelief | WaypointRanking) -> ObjectBelief:
    """Candidate order for the planner: ranking verbatim, or belief sorted
    by descending probability."""
    if isinstance(insight, WaypointRanking):
        if not insight.ranked:
            raise EmptyInsight(f"empty ranking for {insight.object_id!r}")
        return ObjectBelief(insight.object_id, insight.ranked)
    return ObjectBelief(insight.object_id, belief_to_ranking(insight).ranked)


def determinize(beliefs: Mapping[str, ObjectBelief]) -> dict[str, str]:
    """Most-likely location per object; raises once any belief runs dry."""
    return {obj: b.current() for obj, b in beliefs.items()}


def make_plan(
    scene: SceneBundle,
    task: TaskSpec,
    assumed: Mapping[str, str],
    robot_at: str,
    holding: str | None = None,
) -> list[Action]:
    """Plan against assumed object locations: fetch the carried object, then
    deliver it to the container. Each Move is a single nav edge."""
    actions: list[Action] = []
    pos = robot_at
    if holding != task.carried_object:
        target = assumed[task.carried_object]
        pos = _extend_moves(scene, actions, pos, target)
        actions.append(Observe(pos))
        actions.append(Pick(task.carried_object, pos))
    target = assumed[task.container_object]
    pos = _extend_moves(scene, actions, pos, target)
    actions.append(Observe(pos))
    actions.append(Place(task.carried_object, task.container_object, pos))
    return actions


def _extend_moves(scene: SceneBundle, actions: list[Action], src: str, dst: str) -> str:
    path, _ = shortest_path(scene, src, dst)
    for a, b in zip(path, path[1:]):
        actions.append(Move(a, b))
    return dst


class _Router:
    """Per-simulation shortest-path cache over an immutable scene."""

    def __init__(self, scene: SceneBundle):
        self.scene = scene
        self._memo: dict[tuple[str, str], tuple[list[str], float]] = {}

    def route(self, src: str, dst: str) -> tuple[list[str], float]:
        key = (src, dst)
        if key not in self._memo:
            self._memo[key] = shortest_path(self.scene, src, dst)
        return self._memo[key]

    def distance(self, src: str, dst: str) -> float:
        return self.route(src, dst)[1]


def execute_with_replan(
    scene: SceneBundle,
    task: TaskSpec,
    beliefs: Mapping[str, ObjectBelief],
    world: WorldState,
) -> PlanTrace:
    """Simulate one execution against a ground-truth world.

    The robot perceives perfectly at every waypoint it enters (including
    pass-throughs) and caches presence/absence. A sighting overwrites that
    object's belief with certainty; observed absence rules the waypoint out
    of its candidate list. The current plan is recomputed whenever the
    knowledge changes, so the trace equals the initial plan exactly when
    the insight was right. Always terminates: objects sit at waypoints of a
    connected graph and the visited set only grows.
    """
    beliefs = {obj: replace(b) for obj, b in beliefs.items()}
    absent: dict[str, set[str]] = {obj: set() for obj in world.object_locations}
    visited: set[str] = set()
    actions: list[Action] = []
    router = _Router(scene)
    pos = task.start_waypoint
    scene.waypoint(pos)
    holding: str | None = None
    fallback_goal: str | None = None

    def perceive(at: str) -> None:
        visited.add(at)
        for obj, true_loc in world.object_locations.items():
            if true_loc == at:
                if beliefs[obj].candidates != (at,):
                    beliefs[obj] = ObjectBelief(obj, (at,))
            else:
                absent[obj].add(at)

    def assumption(obj: str) -> str | None:
        # skip candidates already observed empty; this is the cursor advance
        b = beliefs[obj]
        cursor = b.cursor
        while cursor < len(b.candidates) and b.candidates[cursor] in absent[obj]:
            cursor += 1
        if cursor != b.cursor:
            beliefs[obj] = replace(b, cursor=cursor)
        if cursor >= len(b.candidates):
            return None
        return b.candidates[cursor]

    perceive(pos)
    while True:
        target_obj = task.container_object if holding == task.carried_object else task.carried_object
        goal = assumption(target_obj)
        if goal is None:
            # insight exhausted: sweep the nearest never-visited waypoint,
            # committing to it until reached or the object is sighted
            if fallback_goal is None or fallback_goal in visited:
                fallback_goal = min(
                    (wid for wid in scene.waypoint_ids if wid not in visited),
                    key=lambda wid: (router.distance(pos, wid), wid),
                )
            goal = fallback_goal
        else:
            fallback_goal = None
        if pos == goal:
            if world.object_locations[target_obj] == pos:
                actions.append(Observe(pos))
                if holding is None:
                    actions.append(Pick(target_obj, pos))
                    holding = target_obj
                else:
                    actions.append(Place(task.carried_object, task.container_object, pos))
                    return PlanTrace(tuple(actions))
            # absence was cached by perceive; the next loop retargets
            continue
        path, _ = router.route(pos, goal)
        step = path[1]
        actions.append(Move(pos, step))
        pos = step
        perceive(pos)


# --- trace export -----------------------------------------------------------

def action_to_dict(index: int, action: Action) -> dict:
    if isinstance(action, Move):
        return {"t": index, "action": "move", "args": [action.src, action.dst]}
    if isinstance(action, Observe):
        return {"t": index, "action": "observe", "args": [action.at]}
    if isinstance(action, Pick):
        return {"t": index, "action": "pick", "args": [action.obj, action.at]}
    return {"t": index, "action": "place", "args": [action.obj, action.container, action.at]}


def action_from_dict(doc: dict) -> Action:
    kind = doc.get("action")
    args = doc.get("args", [])
    try:
        if kind == "move":
            return Move(args[0], args[1])
        if kind == "observe":
            return Observe(args[0])
        if kind == "pick":
            return Pick(args[0], args[1])
        if kind == "place":
            return Place(args[0], args[1], args[2])
    except IndexError as exc:
        raise MalformedPayload(f"bad action args {args!r}") from exc
    raise MalformedPayload(f"unknown action kind {kind!r}")


def dump_trace(trace: PlanTrace, fp: IO[str]) -> None:
    """One action per line, JSON, for replay and inspection."""
    for i, action in enumerate(trace.actions):
        fp.write(json.dumps(action_to_dict(i, action)) + "\n")


def load_trace(fp: IO[str]) -> PlanTrace:
    actions = []
    for line in fp:
        line = line.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedPayload(f"bad trace line: {exc}") from exc
        actions.append(action_from_dict(doc))
    return PlanTrace(tuple(actions))
