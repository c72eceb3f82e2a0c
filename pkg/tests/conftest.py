import math
import random

import networkx as nx
import pytest

from diskpath.geometry import TWO_PI, Disk, segment_visible
from diskpath.scene import Scene, SceneError


def scatter(rng: random.Random, n: int, weights, radius=(0.5, 1.5), gap=0.5, box=None) -> Scene:
    box = box or 2.5 * math.sqrt(n) * (radius[1] + gap) + 1.0
    while True:
        disks = [Disk(i, rng.uniform(-box, box), rng.uniform(-box, box), rng.uniform(*radius), rng.choice(weights))
                 for i in range(n)]
        try:
            sc = Scene.from_disks(disks)
        except SceneError:
            continue
        if n == 1 or min(sc.clearance) >= gap:
            return sc


def free_point(rng: random.Random, scene: Scene, pad=2.0):
    xs = [d.cx for d in scene.disks]
    ys = [d.cy for d in scene.disks]
    while True:
        p = (rng.uniform(min(xs) - pad, max(xs) + pad), rng.uniform(min(ys) - pad, max(ys) + pad))
        if all(math.hypot(p[0] - d.cx, p[1] - d.cy) > d.r + 0.05 for d in scene.disks):
            return p


def grid_visibility_distance(scene: Scene, s, t, per_disk: int, multipliers) -> float:
    """Shortest s-t length over visible straight segments and boundary arcs between grid points.

    Built with networkx from scratch: no contact-point geometry, so it is an
    independent upper bound for interior-avoiding paths.
    """
    g = nx.Graph()
    pts = {"s": s, "t": t}
    for i, d in enumerate(scene.disks):
        for j in range(per_disk):
            pts[(i, j)] = d.point_at(TWO_PI * j / per_disk)
        for j in range(per_disk):
            g.add_edge((i, j), (i, (j + 1) % per_disk), weight=multipliers[i] * d.r * TWO_PI / per_disk)
    keys = list(pts)
    tol = scene.tol
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            p, q = pts[keys[a]], pts[keys[b]]
            if segment_visible(p, q, scene.disks, tol):
                g.add_edge(keys[a], keys[b], weight=math.dist(p, q))
    return nx.dijkstra_path_length(g, "s", "t")


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, repeated in the terminal summary
CRITERIA_LINES: list[str] = []


def report(criterion: str, ok: bool, detail: str) -> bool:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    CRITERIA_LINES.append(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)
