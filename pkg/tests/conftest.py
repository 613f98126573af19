import math

import numpy as np
import pytest

from scenebelief.cli import study_map_text
from scenebelief.scene import SceneBundle, load_scene, scene_from_dict


def make_scene(width, height, waypoints, edges, areas=None):
    """Scene with one region covering the whole map unless areas are given.

    waypoints: {id: (x, y)}; edges: [(a, b), ...]
    """
    if areas is None:
        areas = [
            {
                "id": "floor",
                "kind": "region",
                "polygon": [[0, 0], [width, 0], [width, height], [0, height]],
            }
        ]
    return scene_from_dict(
        {
            "map": {"width": width, "height": height, "resolution": 1.0},
            "areas": areas,
            "waypoints": [{"id": wid, "x": x, "y": y} for wid, (x, y) in waypoints.items()],
            "nav_edges": [[a, b] for a, b in edges],
        }
    )


def random_connected_scene(rng, width=50, height=50, n_waypoints=8, extra_edges=3):
    """Random waypoints joined by a random spanning tree plus a few chords."""
    names = [f"w{i:02d}" for i in range(n_waypoints)]
    positions = {}
    taken = set()
    for name in names:
        while True:
            x = float(rng.uniform(1, width - 1))
            y = float(rng.uniform(1, height - 1))
            key = (round(x, 1), round(y, 1))
            if key not in taken:
                taken.add(key)
                positions[name] = (x, y)
                break
    edges = set()
    order = list(names)
    rng.shuffle(order)
    for i in range(1, len(order)):
        j = int(rng.integers(0, i))
        edges.add(tuple(sorted((order[i], order[j]))))
    for _ in range(extra_edges):
        a, b = rng.choice(names, size=2, replace=False)
        if a != b:
            edges.add(tuple(sorted((str(a), str(b)))))
    return make_scene(width, height, positions, sorted(edges))


@pytest.fixture(scope="session")
def study_scene() -> SceneBundle:
    return load_scene(study_map_text())


@pytest.fixture()
def line_scene() -> SceneBundle:
    # a - b - c - d, unit spacing
    return make_scene(
        10,
        4,
        {"a": (1, 2), "b": (3, 2), "c": (5, 2), "d": (7, 2)},
        [("a", "b"), ("b", "c"), ("c", "d")],
    )


@pytest.fixture()
def two_wp_scene() -> SceneBundle:
    return make_scene(10, 10, {"w1": (0.0, 5.0), "w2": (10.0, 5.0)}, [("w1", "w2")])
