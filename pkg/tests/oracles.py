"""Independent brute-force oracles for the test suite.

These deliberately avoid the library's own code paths: geometry goes
through shapely, nearest-neighbor and path search are exhaustive scans,
and the edit distance is the plain recursive definition.
"""

import math
from functools import lru_cache

from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon


def pixels_in_polygon_ref(width, height, polygon):
    """Shapely-based rasterization: pixel centers covered by the polygon
    (boundary inclusive)."""
    shp = ShapelyPolygon(polygon)
    out = set()
    for i in range(width):
        for j in range(height):
            if shp.covers(ShapelyPoint(i + 0.5, j + 0.5)):
                out.add((i, j))
    return out


def nearest_scan_ref(point, waypoints):
    """Exhaustive nearest waypoint; waypoints: {id: (x, y)}; ties to the
    lexicographically smallest id (strict < over id-sorted candidates)."""
    best = None
    best_d2 = math.inf
    for wid in sorted(waypoints):
        wx, wy = waypoints[wid]
        dx = wx - point[0]
        dy = wy - point[1]
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best_d2 = d2
            best = wid
    return best


def voronoi_ref(width, height, waypoints):
    """Per-pixel exhaustive nearest-waypoint scan."""
    return {
        (i, j): nearest_scan_ref((i + 0.5, j + 0.5), waypoints)
        for i in range(width)
        for j in range(height)
    }


def all_simple_paths(adjacency, src, dst):
    """Every simple path src..dst as (node list, total weight)."""
    results = []

    def walk(node, path, weight, seen):
        if node == dst:
            results.append((list(path), weight))
            return
        for nb, w in adjacency[node]:
            if nb not in seen:
                path.append(nb)
                seen.add(nb)
                walk(nb, path, weight + w, seen)
                seen.discard(nb)
                path.pop()

    walk(src, [src], 0.0, {src})
    return results


def shortest_path_ref(adjacency, src, dst):
    """Minimum (weight, path-sequence) over exhaustive path enumeration."""
    paths = all_simple_paths(adjacency, src, dst)
    assert paths, f"no path {src}->{dst}"
    return min(paths, key=lambda pw: (pw[1], pw[0]))


def dl_ref(a, b):
    """Recursive-definition optimal string alignment distance."""
    a = tuple(a)
    b = tuple(b)

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        best = min(
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
            d(i - 1, j - 1) + (0 if a[i - 1] == b[j - 1] else 1),
        )
        if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
            best = min(best, d(i - 2, j - 2) + 1)
        return best

    return d(len(a), len(b))
