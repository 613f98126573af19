"""Belief elicitation over 2-D robot scenes and plan-quality scoring.

Core pipeline: load a scene bundle, partition its pixels into per-waypoint
Voronoi cells, compile human input (precision points, painted heat maps,
or ordinal rankings) into categorical beliefs over waypoints, then consume
those beliefs in a determinize-and-replan delivery simulator and score the
resulting traces.
"""

from .errors import SceneBeliefError
from .insight import (
    CategoricalBelief,
    PaintField,
    PrecisionInput,
    RankInput,
    WaypointRanking,
)
from .planner import ObjectBelief, PlanTrace, TaskSpec, WorldState
from .scene import GridMap, SceneBundle, VoronoiAssignment, load_scene

__version__ = "0.1.0"

__all__ = [
    "SceneBeliefError",
    "GridMap",
    "SceneBundle",
    "VoronoiAssignment",
    "load_scene",
    "CategoricalBelief",
    "WaypointRanking",
    "PrecisionInput",
    "PaintField",
    "RankInput",
    "ObjectBelief",
    "PlanTrace",
    "TaskSpec",
    "WorldState",
    "__version__",
]
