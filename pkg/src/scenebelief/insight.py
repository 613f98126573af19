"""Compile raw human input into categorical beliefs or rankings.

Three input styles: precision points with probability sliders, painted
brightness fields, and ordered rank points. Precision and paint yield a
``CategoricalBelief`` over waypoints; rank yields a ``WaypointRanking``.
Compilation is pure; ``apply_brush`` returns a new field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import EmptyInsight, MalformedPayload, OutOfBounds
from .scene import GridMap, Pixel, Point, SceneBundle, VoronoiAssignment, nearest_waypoint

# Brush shape: fixed radius, per-tick increment, linear falloff to the rim.
# Configuration, not contract; the browser mirror must use the same values.
BRUSH_RADIUS = 12.0
BRUSH_DELTA = 0.08

OBJECT_IDS = ("umbrella", "bag")
INTERFACE_TAGS = ("precision", "paint", "rank")


@dataclass(frozen=True)
class SelectedPoint:
    x: float
    y: float
    slider: float | None = None  # in [0, 1]; present only for precision input


@dataclass(frozen=True)
class PrecisionInput:
    object_id: str
    points: tuple[SelectedPoint, ...]  # free-floating, stored exactly as entered


@dataclass(frozen=True)
class PaintField:
    object_id: str
    brightness: Mapping[Pixel, float]  # sparse; absent pixels are 0

    def __post_init__(self):
        object.__setattr__(self, "brightness", MappingProxyType(dict(self.brightness)))


@dataclass(frozen=True)
class RankInput:
    object_id: str
    points: tuple[Point, ...]  # index 0 = most likely


InsightInput = PrecisionInput | PaintField | RankInput


@dataclass(frozen=True)
class CategoricalBelief:
    """Per-waypoint probability mass; entries are strictly positive.

    Total mass may be below 1 for precision input (incomplete
    distributions are legal); the residual reads as "location unknown".
    """

    object_id: str
    probabilities: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "probabilities", MappingProxyType(dict(self.probabilities)))

    @property
    def total_mass(self) -> float:
        return sum(self.probabilities.values())


@dataclass(frozen=True)
class WaypointRanking:
    object_id: str
    ranked: tuple[str, ...]  # distinct ids, index 0 = most likely


def normalize_sliders(sliders: Sequence[float]) -> list[float]:
    """Return sliders unchanged when they sum to <= 1, else divide by the sum.

    Keeping sub-unit sums intact is what lets users state incomplete
    distributions.
    """
    for s in sliders:
        if not 0.0 <= s <= 1.0:
            raise MalformedPayload(f"slider {s} outside [0, 1]")
    total = sum(sliders)
    if total <= 1.0:
        return list(sliders)
    return [s / total for s in sliders]


def precision_to_belief(inp: PrecisionInput, scene: SceneBundle) -> CategoricalBelief:
    """Credit each point's normalized slider mass to its nearest waypoint."""
    if not inp.points:
        raise EmptyInsight(f"no points for object {inp.object_id!r}")
    sliders = []
    for p in inp.points:
        if p.slider is None:
            raise MalformedPayload("precision point missing slider")
        sliders.append(p.slider)
    normalized = normalize_sliders(sliders)
    mass: dict[str, float] = {}
    for p, pr in zip(inp.points, normalized):
        wid = nearest_waypoint(scene, (p.x, p.y))  # raises OutOfBounds off-map
        mass[wid] = mass.get(wid, 0.0) + pr
    return CategoricalBelief(inp.object_id, {w: m for w, m in mass.items() if m > 0.0})


def paint_to_belief(field_: PaintField, assignment: VoronoiAssignment) -> CategoricalBelief:
    """Pr(w) = brightness summed over w's cell / brightness summed everywhere."""
    total = 0.0
    per_wp: dict[str, float] = {}
    width, height = assignment.owner_index.shape
    for pixel, b in field_.brightness.items():
        if b <= 0.0:
            continue
        if not (0 <= pixel[0] < width and 0 <= pixel[1] < height):
            raise OutOfBounds(f"painted pixel {pixel} outside map")
        wid = assignment.owner_of(pixel)
        per_wp[wid] = per_wp.get(wid, 0.0) + b
        total += b
    if total <= 0.0:
        raise EmptyInsight(f"paint field for {field_.object_id!r} is all zero")
    return CategoricalBelief(field_.object_id, {w: s / total for w, s in per_wp.items()})


def rank_to_ranking(inp: RankInput, scene: SceneBundle) -> WaypointRanking:
    """Map each ranked point to its nearest waypoint, dropping later duplicates."""
    if not inp.points:
        raise EmptyInsight(f"no rank points for object {inp.object_id!r}")
    ranked: list[str] = []
    for point in inp.points:
        wid = nearest_waypoint(scene, point)
        if wid not in ranked:
            ranked.append(wid)
    return WaypointRanking(inp.object_id, tuple(ranked))


def belief_to_ranking(belief: CategoricalBelief) -> WaypointRanking:
    """Order positive-mass waypoints by descending probability, id on ties."""
    if not belief.probabilities:
        raise EmptyInsight(f"belief for {belief.object_id!r} has empty support")
    ranked = sorted(belief.probabilities, key=lambda w: (-belief.probabilities[w], w))
    return WaypointRanking(belief.object_id, tuple(ranked))


def apply_brush(
    field_: PaintField,
    center: Point,
    ticks: int,
    grid: GridMap,
    radius: float = BRUSH_RADIUS,
    delta: float = BRUSH_DELTA,
) -> PaintField:
    """Brighten pixels around ``center``; full strength at the center, linear
    falloff to zero at ``radius``, clamped to 1. Never darkens."""
    cx, cy = center
    if not grid.contains(cx, cy):
        raise OutOfBounds(f"brush center ({cx}, {cy}) outside map bounds")
    if ticks < 1:
        raise MalformedPayload("ticks must be a positive integer")
    brightness = dict(field_.brightness)
    i_lo = max(0, int(math.floor(cx - radius)))
    i_hi = min(grid.width - 1, int(math.ceil(cx + radius)))
    j_lo = max(0, int(math.floor(cy - radius)))
    j_hi = min(grid.height - 1, int(math.ceil(cy + radius)))
    for i in range(i_lo, i_hi + 1):
        for j in range(j_lo, j_hi + 1):
            dx = i + 0.5 - cx
            dy = j + 0.5 - cy
            d = math.sqrt(dx * dx + dy * dy)
            if d >= radius:
                continue
            falloff = 1.0 - d / radius
            value = min(1.0, brightness.get((i, j), 0.0) + ticks * delta * falloff)
            if value > 0.0:
                brightness[(i, j)] = value
    return PaintField(field_.object_id, brightness)


# --- payload (de)serialization ---------------------------------------------

def parse_payload(doc: dict) -> InsightInput:
    """Parse one insight payload document into its typed input.

    Schema: {"object_id", "interface", "points": [{x, y, slider?}], "paint":
    [{x, y, b}]} with exactly one of points/paint, matching the tag.
    """
    if not isinstance(doc, dict):
        raise MalformedPayload("payload must be a JSON object")
    try:
        object_id = str(doc["object_id"])
        tag = str(doc["interface"])
    except KeyError as exc:
        raise MalformedPayload(f"payload missing field {exc}") from exc
    if tag not in INTERFACE_TAGS:
        raise MalformedPayload(f"unknown interface tag {tag!r}")
    has_points = "points" in doc
    has_paint = "paint" in doc
    if tag == "paint":
        if not has_paint or has_points:
            raise MalformedPayload("paint payload must carry 'paint' and not 'points'")
    else:
        if not has_points or has_paint:
            raise MalformedPayload(f"{tag} payload must carry 'points' and not 'paint'")
    try:
        if tag == "precision":
            points = tuple(
                SelectedPoint(float(p["x"]), float(p["y"]), float(p["slider"]))
                for p in doc["points"]
            )
            for p in points:
                if not 0.0 <= p.slider <= 1.0:
                    raise MalformedPayload(f"slider {p.slider} outside [0, 1]")
            if not points:
                raise MalformedPayload("precision payload has no points")
            return PrecisionInput(object_id, points)
        if tag == "rank":
            pts = tuple((float(p["x"]), float(p["y"])) for p in doc["points"])
            if not pts:
                raise MalformedPayload("rank payload has no points")
            return RankInput(object_id, pts)
        brightness: dict[Pixel, float] = {}
        for entry in doc["paint"]:
            b = float(entry["b"])
            if not 0.0 <= b <= 1.0:
                raise MalformedPayload(f"brightness {b} outside [0, 1]")
            if b > 0.0:
                brightness[(int(entry["x"]), int(entry["y"]))] = b
        return PaintField(object_id, brightness)
    except MalformedPayload:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPayload(f"payload malformed: {exc}") from exc


def payload_to_dict(inp: InsightInput) -> dict:
    if isinstance(inp, PrecisionInput):
        return {
            "object_id": inp.object_id,
            "interface": "precision",
            "points": [{"x": p.x, "y": p.y, "slider": p.slider} for p in inp.points],
        }
    if isinstance(inp, RankInput):
        return {
            "object_id": inp.object_id,
            "interface": "rank",
            "points": [{"x": x, "y": y} for x, y in inp.points],
        }
    return {
        "object_id": inp.object_id,
        "interface": "paint",
        "paint": [
            {"x": i, "y": j, "b": b}
            for (i, j), b in sorted(inp.brightness.items())
            if b > 0.0
        ],
    }


def compile_insight(
    inp: InsightInput, scene: SceneBundle, assignment: VoronoiAssignment
) -> CategoricalBelief | WaypointRanking:
    """Dispatch one input to its compiler."""
    if isinstance(inp, PrecisionInput):
        return precision_to_belief(inp, scene)
    if isinstance(inp, PaintField):
        return paint_to_belief(inp, assignment)
    return rank_to_ranking(inp, scene)
