"""Steiner points on disk boundaries: vicinity centers and geometric ring points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import HALF_PI, TWO_PI, Point, normalize_angle
from .scene import Scene

VICINITY_CENTER = "vicinity_center"
RING_POINT = "ring_point"
TERMINAL = "terminal"


@dataclass(frozen=True)
class SteinerNode:
    """A boundary node; ``disk`` is the disk's position in ``scene.disks``.

    Terminals off every boundary have ``disk == -1`` and carry ``point``.
    """

    disk: int
    angle: float
    kind: str
    owner: tuple[int, int] | None = None
    point: Point | None = None


@dataclass
class SteinerSet:
    nodes: list[SteinerNode]
    epsilon: float
    k: dict[int, int] = field(default_factory=dict)
    r: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def on_disk(self, i: int) -> list[SteinerNode]:
        return [v for v in self.nodes if v.disk == i]

    def disk_ids(self) -> np.ndarray:
        return np.array([v.disk for v in self.nodes], dtype=np.int64)

    def angles(self) -> np.ndarray:
        return np.array([v.angle for v in self.nodes], dtype=np.float64)

    def to_json(self) -> list[dict]:
        return [{"disk": v.disk, "angle": v.angle, "kind": v.kind} for v in self.nodes]


def _check_eps(eps: float) -> None:
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {eps}")


def zero_weight_gap(scene: Scene, i: int, eps: float) -> float:
    """Central angle between consecutive vicinity centers on a zero-weight disk."""
    d = scene.clearance[i]
    return eps * d / (scene.a * (d + 1.0))


def vicinity_centers(scene: Scene, i: int, eps: float) -> list[float]:
    """Angles of the vicinity centers of disk ``i``, starting at angle 0."""
    _check_eps(eps)
    disk = scene.disks[i]
    if disk.w > 0.0:
        k = int(math.floor(math.pi / (2.0 * scene.alpha[i])))
        return [TWO_PI * j / k for j in range(k)]
    gap = zero_weight_gap(scene, i, eps)
    # largest k with (k - 1) * gap < 2 pi
    k = int(math.ceil(TWO_PI / gap))
    while (k - 1) * gap >= TWO_PI:
        k -= 1
    while k * gap < TWO_PI:
        k += 1
    return [j * gap for j in range(k)]


def ring_ratio(w: float, eps: float, a: float) -> float:
    """Common ratio ``1 - 2 w eps / (a pi)`` of the ring-point angle gaps."""
    return 1.0 - 2.0 * min(w, HALF_PI) * eps / (a * math.pi)


def cumulative_inscribed(ell, w: float, eps: float, a: float):
    """Inscribed angle at the vicinity center between the antipode and ring point ``ell``.

    Closed form of the geometric sum: (pi/2) (1 - q**ell).
    """
    x = 2.0 * min(w, HALF_PI) * eps / (a * math.pi)
    return -HALF_PI * np.expm1(np.asarray(ell, dtype=np.float64) * math.log1p(-x))


def ring_count(alpha: float, w: float, eps: float, a: float) -> int:
    """Largest ``r`` whose cumulative inscribed angle stays within pi/2 - alpha."""
    q = ring_ratio(w, eps, a)
    r = int(math.floor(math.log(2.0 * alpha / math.pi) / math.log(q)))
    limit = HALF_PI - alpha
    while r > 0 and cumulative_inscribed(r, w, eps, a) > limit:
        r -= 1
    while cumulative_inscribed(r + 1, w, eps, a) <= limit:
        r += 1
    return r


def annulus_indices(alpha: float, w: float, eps: float, a: float) -> np.ndarray:
    """Ring indices ``ell`` in 0..r whose point lies in the annulus around the center."""
    r = ring_count(alpha, w, eps, a)
    ell = np.arange(r + 1)
    beta = cumulative_inscribed(ell, w, eps, a)
    return ell[beta >= HALF_PI - 2.0 * alpha]


def ring_points(scene: Scene, i: int, eps: float, j: int) -> list[SteinerNode]:
    """Annulus-filtered ring points of vicinity ``j`` on disk ``i``, both half-disks."""
    _check_eps(eps)
    disk = scene.disks[i]
    if not disk.w > 0.0:
        return []
    alpha = scene.alpha[i]
    centers = vicinity_centers(scene, i, eps)
    v = centers[j]
    ell = annulus_indices(alpha, disk.w, eps, scene.a)
    beta = cumulative_inscribed(ell, disk.w, eps, scene.a)
    out = []
    # the inscribed angle beta at the center subtends 2*beta at the disk center,
    # measured from the antipode back towards the vicinity center
    for b in beta:
        for side in (-1.0, 1.0):
            ang = normalize_angle(v + math.pi + side * 2.0 * float(b))
            out.append(SteinerNode(i, ang, RING_POINT, (i, j)))
    return out


def _dedup(nodes: list[SteinerNode], radius: float, tol: float) -> list[SteinerNode]:
    if not nodes:
        return nodes
    rank = {VICINITY_CENTER: 0, TERMINAL: 0, RING_POINT: 1}
    nodes = sorted(nodes, key=lambda v: (v.angle, rank[v.kind]))
    kept: list[SteinerNode] = []
    for v in nodes:
        if kept and (v.angle - kept[-1].angle) * radius <= tol:
            if rank[v.kind] < rank[kept[-1].kind]:
                kept[-1] = v
            continue
        kept.append(v)
    if len(kept) > 1 and (kept[0].angle + TWO_PI - kept[-1].angle) * radius <= tol:
        last = kept.pop()
        if rank[last.kind] < rank[kept[0].kind]:
            kept[0] = last
    return kept


def build_steiner_set(scene: Scene, eps: float) -> SteinerSet:
    """All vicinity centers and annulus ring points; near-coincident nodes are merged."""
    _check_eps(eps)
    nodes: list[SteinerNode] = []
    ks: dict[int, int] = {}
    rs: dict[int, int] = {}
    for i, disk in enumerate(scene.disks):
        centers = vicinity_centers(scene, i, eps)
        ks[i] = len(centers)
        per_disk = [SteinerNode(i, normalize_angle(a), VICINITY_CENTER) for a in centers]
        if disk.w > 0.0:
            rs[i] = ring_count(scene.alpha[i], disk.w, eps, scene.a)
            ell = annulus_indices(scene.alpha[i], disk.w, eps, scene.a)
            beta = cumulative_inscribed(ell, disk.w, eps, scene.a)
            for j, v in enumerate(centers):
                for b in beta:
                    for side in (-1.0, 1.0):
                        per_disk.append(SteinerNode(i, normalize_angle(v + math.pi + side * 2.0 * float(b)),
                                                    RING_POINT, (i, j)))
        nodes.extend(_dedup(per_disk, disk.r, scene.tol))
    return SteinerSet(nodes, eps, ks, rs)


def uniform_nodes(scene: Scene, h: float) -> list[SteinerNode]:
    """``ceil(2 pi / h)`` equally spaced boundary nodes per disk, phase 0."""
    out = []
    for i in range(scene.n):
        m = int(math.ceil(TWO_PI / h))
        out.extend(SteinerNode(i, TWO_PI * j / m, VICINITY_CENTER) for j in range(m))
    return out


# ------------------------------------------------------------ count bounds

def vicinity_bound(alpha: float, w: float, eps: float, a: float) -> float:
    """Upper bound on the ring points of one vicinity center (before the annulus filter)."""
    q = ring_ratio(w, eps, a)
    return 2.0 * (1.0 + math.log2(alpha / math.pi)) / math.log2(q) + 1.0


def disk_bound(alpha: float, w: float, eps: float, a: float) -> float:
    """Upper bound on centers plus ring points placed on one positive-weight disk."""
    w = min(w, HALF_PI)
    return (1.0 / math.log2(a * math.pi / (a * math.pi - 2.0 * w * eps))) * (math.pi / alpha)


def node_constant(scene: Scene) -> float:
    """The scene constant C bounding the total node count by C n / eps."""
    positive = [min(d.w, HALF_PI) for d in scene.disks if d.w > 0.0]
    w = min(positive) if positive else 1.0
    geo = min([1.0] + [cl * cl for cl in scene.clearance] + [d.r * d.r for d in scene.disks])
    max_r = max(d.r for d in scene.disks)
    return 2.0 * scene.a * math.pi ** 3 * (max_r + 1.0) / (min(1.0, w * w) * geo)


def predicted_counts(scene: Scene, eps: float) -> dict:
    """Closed-form count bounds per disk, plus the global C n / eps bound."""
    _check_eps(eps)
    per_disk = []
    for i, disk in enumerate(scene.disks):
        if disk.w > 0.0:
            al = scene.alpha[i]
            per_disk.append({"disk": i, "vicinity_bound": vicinity_bound(al, disk.w, eps, scene.a),
                             "disk_bound": disk_bound(al, disk.w, eps, scene.a)})
        else:
            per_disk.append({"disk": i, "vicinity_bound": None,
                             "disk_bound": float(len(vicinity_centers(scene, i, eps)))})
    return {"per_disk": per_disk, "total_bound": node_constant(scene) * scene.n / eps}
