"""Random scene generators and the verification matrix behind ``diskpath verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .discretize import build_steiner_set
from .geometry import HALF_PI, Disk
from .obstacle import exact_path, single_disk_optimum
from .oracle import compare
from .pathgraph import PathGraph, audit_path, route
from .scene import Scene, SceneError
from .spanner import build_yao, complete_distances, spanner_bound, spanning_audit

CRITERION_WEIGHTS = (0.0, 0.3, 1.0, 1.4, HALF_PI)
# spanner audits are all-pairs over the node set, so light disks (many nodes) are left out
SPANNER_WEIGHTS = (0.0, 1.0, 1.4, HALF_PI, math.inf)


def random_scene(rng: random.Random, n: int, weights=CRITERION_WEIGHTS, radius=(0.5, 2.0),
                 clearance: float = 0.3, box: float | None = None, tries: int = 10_000) -> Scene:
    """Rejection-sample ``n`` disks with every pairwise gap at least ``clearance``."""
    if box is None:
        box = 3.0 * math.sqrt(n) * (radius[1] + clearance)
    for _ in range(tries):
        disks = [Disk(i, rng.uniform(-box, box), rng.uniform(-box, box), rng.uniform(*radius), rng.choice(weights))
                 for i in range(n)]
        try:
            sc = Scene.from_disks(disks)
        except SceneError:
            continue
        if n == 1 or min(sc.clearance) >= clearance:
            return sc
    raise RuntimeError("could not place disks; enlarge the box")


def random_terminal(rng: random.Random, scene: Scene, margin: float = 3.0):
    """A point on a boundary, inside a finite-weight disk, or in free space."""
    d = rng.choice(scene.disks)
    mode = rng.random()
    a = rng.uniform(0.0, 2.0 * math.pi)
    if mode < 0.4:
        return (d.cx + d.r * math.cos(a), d.cy + d.r * math.sin(a))
    if mode < 0.6 and math.isfinite(d.w):
        r = 0.95 * d.r * math.sqrt(rng.random())
        return (d.cx + r * math.cos(a), d.cy + r * math.sin(a))
    xs = [e.cx for e in scene.disks]
    ys = [e.cy for e in scene.disks]
    while True:
        p = (rng.uniform(min(xs) - margin, max(xs) + margin), rng.uniform(min(ys) - margin, max(ys) + margin))
        if all(math.hypot(p[0] - e.cx, p[1] - e.cy) > e.r + 0.05 for e in scene.disks):
            return p


@dataclass
class Row:
    case: str
    epsilon: float | None
    ratio: float
    bound: float

    @property
    def ok(self) -> bool:
        return self.ratio <= self.bound

    def as_dict(self) -> dict:
        return {"case": self.case, "epsilon": self.epsilon, "ratio": self.ratio, "bound": self.bound, "ok": self.ok}


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def run_matrix(quick: bool = False, seed: int = 2024):
    """Yield verification rows; ``quick`` trims every family to a few cases."""
    rng = random.Random(seed)

    ob = Scene.from_disks([Disk(0, 0.0, 0.0, 1.0, math.inf)])
    w = exact_path(ob, (-2.0, 0.0), (2.0, 0.0)).total_weight
    yield Row("obstacle-exact", None, w / (2.0 * math.sqrt(3.0) + math.pi / 3.0), 1.0 + 1e-9)

    zero = Scene.from_disks([Disk(0, 0.0, 0.0, 1.0, 0.0)])
    for j in range(3 if quick else 20):
        a = rng.uniform(0, 2 * math.pi)
        ct = rng.uniform(1.2, 5.0)
        t = (ct * math.cos(a), ct * math.sin(a))
        b = rng.uniform(0, 2 * math.pi)
        s = (math.cos(b), math.sin(b))
        exact = single_disk_optimum(zero.disks[0], s, t)
        yield Row(f"zero-closed-form-{j}", None, 1.0 + _rel(exact, ct - 1.0), 1.0 + 1e-9)
        for eps in (1.0, 0.5, 0.25):
            path, _ = route(zero, s, t, eps)
            yield Row(f"zero-disk-{j}", eps, path.total_weight / (ct - 1.0), 1.0 + eps)

    for j in range(3 if quick else 25):
        sc = random_scene(rng, rng.choice((1, 2, 3)), clearance=1.0)
        s, t = random_terminal(rng, sc), random_terminal(rng, sc)
        for eps in ((0.5,) if quick else (0.5, 0.25)):
            c = compare(sc, s, t, eps)
            ratio = c.ratio if c.reference > 0.0 else (1.0 if c.graph_weight == 0.0 else math.inf)
            yield Row(f"oracle-{j}", eps, ratio, c.bound)
            audit = audit_path(sc, c.path)
            yield Row(f"audit-{j}", eps, 1.0 + _rel(audit, c.graph_weight) if c.graph_weight else 1.0, 1.0 + 1e-7)

    for j in range(2 if quick else 10):
        sc = random_scene(rng, rng.choice((1, 2, 3, 4)), weights=SPANNER_WEIGHTS, radius=(0.5, 1.5), clearance=1.0)
        g = PathGraph(sc, build_steiner_set(sc, 0.5).nodes, 0.5)
        dg = complete_distances(g)
        for k in (4, 6, 8):
            yield Row(f"spanner-{j}-k{k}", 0.5, spanning_audit(build_yao(sc, g, k), g, dg), spanner_bound(k) + 1e-9)
