"""Scene model: discretized map, labeled areas, waypoints, nav graph.

The map is a grid of pixels; pixel (i, j) covers the unit square with
center (i + 0.5, j + 0.5). Areas are simple polygons in pixel coordinates.
Waypoints are the places the robot can visit; the Voronoi partition of
pixels over waypoints is what turns painted/pointed human input into
per-waypoint probability mass downstream.

All types here are immutable after construction and safe to share between
threads; every operation is a pure function of its inputs.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
from shapely.geometry import Polygon as _ShapelyPolygon

from .errors import (
    DisconnectedGraph,
    InvalidGeometry,
    MalformedBundle,
    OutOfBounds,
    UnknownArea,
    UnknownWaypoint,
)

Pixel = tuple[int, int]
Point = tuple[float, float]

AREA_KINDS = ("region", "surface")


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    resolution: float = 1.0  # meters per pixel, metadata only

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.width and 0.0 <= y <= self.height

    def pixel_at(self, x: float, y: float) -> Pixel:
        """Pixel containing (x, y); points on the far edge clamp inward."""
        if not self.contains(x, y):
            raise OutOfBounds(f"point ({x}, {y}) outside {self.width}x{self.height} map")
        return (min(int(x), self.width - 1), min(int(y), self.height - 1))


@dataclass(frozen=True)
class Area:
    id: str
    kind: str  # "region" | "surface"
    polygon: tuple[Point, ...]


@dataclass(frozen=True)
class Waypoint:
    id: str
    x: float
    y: float

    @property
    def position(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class SceneBundle:
    map: GridMap
    areas: tuple[Area, ...]
    waypoints: tuple[Waypoint, ...]
    nav_edges: tuple[tuple[str, str], ...]

    def area(self, area_id: str) -> Area:
        for a in self.areas:
            if a.id == area_id:
                return a
        raise UnknownArea(f"no area {area_id!r}")

    def waypoint(self, waypoint_id: str) -> Waypoint:
        wp = self._waypoint_index.get(waypoint_id)
        if wp is None:
            raise UnknownWaypoint(f"no waypoint {waypoint_id!r}")
        return wp

    @cached_property
    def _waypoint_index(self) -> Mapping[str, Waypoint]:
        return {w.id: w for w in self.waypoints}

    @cached_property
    def waypoint_ids(self) -> tuple[str, ...]:
        """All waypoint ids in lexicographic order (the canonical basis)."""
        return tuple(sorted(w.id for w in self.waypoints))

    @cached_property
    def adjacency(self) -> Mapping[str, tuple[tuple[str, float], ...]]:
        """Undirected adjacency with Euclidean edge weights."""
        adj: dict[str, list[tuple[str, float]]] = {w.id: [] for w in self.waypoints}
        for a, b in self.nav_edges:
            w = edge_weight(self, a, b)
            adj[a].append((b, w))
            adj[b].append((a, w))
        return {k: tuple(sorted(v)) for k, v in adj.items()}


@dataclass(frozen=True)
class VoronoiAssignment:
    """Partition of all map pixels into per-waypoint cells.

    ``owner_index[i, j]`` indexes into ``waypoint_ids`` (lexicographically
    sorted), so equidistant pixels land on the smallest id.
    """

    waypoint_ids: tuple[str, ...]
    owner_index: np.ndarray = field(repr=False)  # shape (width, height)

    def owner_of(self, pixel: Pixel) -> str:
        return self.waypoint_ids[self.owner_index[pixel[0], pixel[1]]]

    def cells(self) -> dict[str, set[Pixel]]:
        out: dict[str, set[Pixel]] = {wid: set() for wid in self.waypoint_ids}
        width, height = self.owner_index.shape
        for i in range(width):
            for j in range(height):
                out[self.waypoint_ids[self.owner_index[i, j]]].add((i, j))
        return out

    def cell_sizes(self) -> dict[str, int]:
        counts = np.bincount(self.owner_index.ravel(), minlength=len(self.waypoint_ids))
        return {wid: int(counts[k]) for k, wid in enumerate(self.waypoint_ids)}


def edge_weight(scene: SceneBundle, a: str, b: str) -> float:
    """Euclidean distance between two waypoints; weights are never stored."""
    wa, wb = scene.waypoint(a), scene.waypoint(b)
    return math.hypot(wa.x - wb.x, wa.y - wb.y)


# --- geometry helpers -------------------------------------------------------

def _on_segment(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0.0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def point_in_polygon(x: float, y: float, polygon: Sequence[Point]) -> bool:
    """Even-odd rule; points exactly on an edge count as inside."""
    n = len(polygon)
    inside = False
    for k in range(n):
        ax, ay = polygon[k]
        bx, by = polygon[(k + 1) % n]
        if _on_segment(x, y, ax, ay, bx, by):
            return True
        if (ay > y) != (by > y):
            # x coordinate where the edge crosses the horizontal through y
            t = (y - ay) / (by - ay)
            if x < ax + t * (bx - ax):
                inside = not inside
    return inside


def _validate_polygon(area_id: str, polygon: Sequence[Point]) -> None:
    if len(polygon) < 3:
        raise InvalidGeometry(f"area {area_id!r}: polygon needs >= 3 vertices")
    shp = _ShapelyPolygon(polygon)
    if not shp.is_valid or shp.area <= 0.0:
        raise InvalidGeometry(f"area {area_id!r}: polygon is degenerate or self-intersecting")


# --- bundle loading ---------------------------------------------------------

def scene_from_dict(doc: dict) -> SceneBundle:
    """Validate a parsed bundle document; raises typed errors, never crashes."""
    try:
        m = doc["map"]
        grid = GridMap(int(m["width"]), int(m["height"]), float(m.get("resolution", 1.0)))
        areas = tuple(
            Area(str(a["id"]), str(a["kind"]), tuple((float(x), float(y)) for x, y in a["polygon"]))
            for a in doc["areas"]
        )
        waypoints = tuple(
            Waypoint(str(w["id"]), float(w["x"]), float(w["y"])) for w in doc["waypoints"]
        )
        nav_edges = tuple((str(a), str(b)) for a, b in doc.get("nav_edges", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedBundle(f"bundle document malformed: {exc}") from exc

    if grid.width < 1 or grid.height < 1:
        raise MalformedBundle("map dimensions must be positive")
    if grid.resolution <= 0:
        raise MalformedBundle("map resolution must be positive")

    area_ids = [a.id for a in areas]
    if len(set(area_ids)) != len(area_ids):
        raise MalformedBundle("duplicate area ids")
    wp_ids = [w.id for w in waypoints]
    if len(set(wp_ids)) != len(wp_ids):
        raise MalformedBundle("duplicate waypoint ids")
    for a in areas:
        if a.kind not in AREA_KINDS:
            raise MalformedBundle(f"area {a.id!r}: unknown kind {a.kind!r}")
        _validate_polygon(a.id, a.polygon)

    if not waypoints:
        raise InvalidGeometry("bundle has no waypoints")
    regions = [a for a in areas if a.kind == "region"]
    for w in waypoints:
        if not grid.contains(w.x, w.y):
            raise InvalidGeometry(f"waypoint {w.id!r} outside map bounds")
        if not any(point_in_polygon(w.x, w.y, r.polygon) for r in regions):
            raise InvalidGeometry(f"waypoint {w.id!r} lies in no region")

    known = set(wp_ids)
    for a, b in nav_edges:
        if a not in known or b not in known:
            raise MalformedBundle(f"nav edge ({a!r}, {b!r}) references unknown waypoint")
        if a == b:
            raise MalformedBundle(f"nav edge ({a!r}, {b!r}) is a self-loop")

    scene = SceneBundle(grid, areas, waypoints, nav_edges)
    _check_connected(scene)
    return scene


def _check_connected(scene: SceneBundle) -> None:
    ids = [w.id for w in scene.waypoints]
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        node = stack.pop()
        for nb, _ in scene.adjacency[node]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(ids):
        raise DisconnectedGraph(
            f"navigation graph has {len(ids) - len(seen)} waypoint(s) unreachable from {ids[0]!r}"
        )


def load_scene(bundle_bytes: bytes | str) -> SceneBundle:
    """Parse and validate a scene bundle file (JSON)."""
    try:
        doc = json.loads(bundle_bytes)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedBundle(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedBundle("bundle root must be a JSON object")
    return scene_from_dict(doc)


def scene_to_dict(scene: SceneBundle) -> dict:
    return {
        "map": {
            "width": scene.map.width,
            "height": scene.map.height,
            "resolution": scene.map.resolution,
        },
        "areas": [
            {"id": a.id, "kind": a.kind, "polygon": [[x, y] for x, y in a.polygon]}
            for a in scene.areas
        ],
        "waypoints": [{"id": w.id, "x": w.x, "y": w.y} for w in scene.waypoints],
        "nav_edges": [[a, b] for a, b in scene.nav_edges],
    }


# --- operations -------------------------------------------------------------

def pixels_in_area(scene: SceneBundle, area_id: str) -> set[Pixel]:
    """All pixels whose center lies inside (or on the boundary of) the area."""
    area = scene.area(area_id)
    out: set[Pixel] = set()
    for i in range(scene.map.width):
        for j in range(scene.map.height):
            if point_in_polygon(i + 0.5, j + 0.5, area.polygon):
                out.add((i, j))
    return out


def voronoi_assign(scene: SceneBundle) -> VoronoiAssignment:
    """Assign every pixel to its nearest waypoint (ties to smallest id)."""
    ids = scene.waypoint_ids
    pos = np.array([scene.waypoint(wid).position for wid in ids], dtype=np.float64)
    cx = np.arange(scene.map.width, dtype=np.float64) + 0.5
    cy = np.arange(scene.map.height, dtype=np.float64) + 0.5
    # (width, height, n) squared distances from pixel centers to waypoints
    dx = cx[:, None, None] - pos[None, None, :, 0]
    dy = cy[None, :, None] - pos[None, None, :, 1]
    d2 = dx * dx + dy * dy
    # argmin returns the first (lexicographically smallest id) minimizer
    owner = np.argmin(d2, axis=2).astype(np.int32)
    return VoronoiAssignment(ids, owner)


def nearest_waypoint(scene: SceneBundle, point: Point) -> str:
    """Closest waypoint to a real-valued point; ties to smallest id."""
    x, y = point
    if not scene.map.contains(x, y):
        raise OutOfBounds(f"point ({x}, {y}) outside map bounds")
    best_id = None
    best_d2 = math.inf
    for wid in scene.waypoint_ids:
        w = scene.waypoint(wid)
        dx = w.x - x
        dy = w.y - y
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best_d2 = d2
            best_id = wid
    assert best_id is not None
    return best_id


def shortest_path(scene: SceneBundle, src: str, dst: str) -> tuple[list[str], float]:
    """Minimum-weight path over nav edges.

    Among equal-weight paths the lexicographically smallest node-id
    sequence wins, which the heap ordering on (weight, path) gives us
    for free.
    """
    scene.waypoint(src)
    scene.waypoint(dst)
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (src,))]
    done: set[str] = set()
    while heap:
        dist, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node == dst:
            return list(path), dist
        for nb, w in scene.adjacency[node]:
            if nb not in done:
                heapq.heappush(heap, (dist + w, path + (nb,)))
    # unreachable: bundles are validated connected at load time
    raise DisconnectedGraph(f"no path from {src!r} to {dst!r}")


def propose_edges(scene: SceneBundle) -> list[tuple[str, str]]:
    """Advisory helper: suggest nav edges for a bundle authored without them.

    Connects waypoints whose Voronoi cells touch (4-neighborhood) and whose
    straight connecting segment stays off surface polygons. Output is a
    suggestion for a human to review, not a construction rule.
    """
    assignment = voronoi_assign(scene)
    owner = assignment.owner_index
    ids = assignment.waypoint_ids
    pairs: set[tuple[int, int]] = set()
    width, height = owner.shape
    for i in range(width):
        for j in range(height):
            a = owner[i, j]
            if i + 1 < width and owner[i + 1, j] != a:
                pairs.add(tuple(sorted((a, owner[i + 1, j]))))
            if j + 1 < height and owner[i, j + 1] != a:
                pairs.add(tuple(sorted((a, owner[i, j + 1]))))
    surfaces = [a for a in scene.areas if a.kind == "surface"]
    out = []
    for a, b in sorted(pairs):
        wa, wb = scene.waypoint(ids[a]), scene.waypoint(ids[b])
        if not _segment_hits_any(wa.position, wb.position, surfaces):
            out.append((ids[a], ids[b]))
    return out


def _segment_hits_any(p: Point, q: Point, surfaces: Iterable[Area]) -> bool:
    steps = max(2, int(math.hypot(q[0] - p[0], q[1] - p[1])))
    for k in range(steps + 1):
        t = k / steps
        x = p[0] + t * (q[0] - p[0])
        y = p[1] + t * (q[1] - p[1])
        for s in surfaces:
            if point_in_polygon(x, y, s.polygon):
                return True
    return False
