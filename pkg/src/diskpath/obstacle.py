"""Exact shortest paths when disks are obstacles or zero-cost regions.

The graph has a node at every contact point of a segment with a disk
boundary and at the two terminals.  Segments are the common contact lines
between disk pairs and the contact lines from each terminal; arcs join
angularly consecutive nodes on each disk.  A disk whose boundary costs
``m`` per unit length is met by segments tangent to the circle of radius
``m * r`` (ordinary tangents for obstacles, radial segments for zero-weight
disks), which is where an optimal path may leave or reach the boundary.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from scipy.optimize import minimize_scalar

from .geometry import (
    HALF_PI,
    TWO_PI,
    Disk,
    Point,
    angular_distance,
    common_tangent_angles,
    segment_visible,
    tangent_angles_from_point,
)
from .paths import WeightedPath, arc_piece, segment
from .scene import Scene


class TerminalInsideObstacle(ValueError):
    pass


class MixedWeightError(ValueError):
    """The exact solver only handles weights 0 and >= pi/2."""


@dataclass
class VisGraph:
    disks: list[Disk]
    multipliers: list[float]
    points: list[Point] = field(default_factory=list)
    # (disk index, angle) for boundary nodes; None for free terminals
    anchors: list[tuple[int, float] | None] = field(default_factory=list)
    adj: list[list[tuple[int, float, tuple]]] = field(default_factory=list)

    def add_node(self, p: Point, anchor) -> int:
        self.points.append(Point(*p))
        self.anchors.append(anchor)
        self.adj.append([])
        return len(self.points) - 1

    def add_edge(self, u: int, v: int, w: float, geom: tuple) -> None:
        self.adj[u].append((v, w, geom))
        self.adj[v].append((u, w, geom))

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def tangent_edges(self) -> list[tuple[int, int]]:
        return sorted({(min(u, v), max(u, v)) for u in range(len(self.adj))
                       for v, _, g in self.adj[u] if g[0] == "seg"})


def _anchor_terminal(p, disks, tol):
    for i, d in enumerate(disks):
        dist = math.hypot(p[0] - d.cx, p[1] - d.cy)
        if abs(dist - d.r) <= tol:
            return (i, d.angle_of(p))
        if dist < d.r:
            raise TerminalInsideObstacle(f"terminal {tuple(p)} lies inside disk {d.id}")
    return None


def build_visgraph(disks, multipliers, s, t, tol: float = 1e-9) -> tuple[VisGraph, int, int]:
    """Contact-point graph for terminals ``s`` and ``t``.

    ``multipliers[i]`` is the cost per unit length along the boundary of
    disk ``i``; interiors are never entered.
    """
    disks = list(disks)
    g = VisGraph(disks, list(multipliers))
    s, t = Point(*s), Point(*t)
    anchors = [_anchor_terminal(s, disks, tol), _anchor_terminal(t, disks, tol)]
    si = g.add_node(s, anchors[0])
    ti = g.add_node(t, anchors[1])
    if segment_visible(s, t, disks, tol):
        g.add_edge(si, ti, s.dist(t), ("seg",))

    for a in range(len(disks)):
        for b in range(a + 1, len(disks)):
            da, db = disks[a], disks[b]
            for aa, ab in common_tangent_angles(da, db, multipliers[a], multipliers[b], tol):
                pa, pb = da.point_at(aa), db.point_at(ab)
                u = g.add_node(pa, (a, aa))
                v = g.add_node(pb, (b, ab))
                if segment_visible(pa, pb, disks, tol):
                    g.add_edge(u, v, pa.dist(pb), ("seg",))

    for term, anchor in ((si, anchors[0]), (ti, anchors[1])):
        p = g.points[term]
        for i, d in enumerate(disks):
            if anchor is not None and anchor[0] == i:
                continue
            for ang in tangent_angles_from_point(p, d, multipliers[i], tol):
                q = d.point_at(ang)
                if segment_visible(p, q, disks, tol):
                    u = g.add_node(q, (i, ang))
                    g.add_edge(term, u, p.dist(q), ("seg",))

    for i, d in enumerate(disks):
        on = sorted((g.anchors[u][1], u) for u in range(len(g.points))
                    if g.anchors[u] is not None and g.anchors[u][0] == i)
        if len(on) < 2:
            continue
        # with two nodes both arcs between them are kept
        pairs = list(zip(on, on[1:])) + [(on[-1], on[0])]
        for (a0, u), (a1, v) in pairs:
            sweep = (a1 - a0) % TWO_PI
            g.add_edge(u, v, multipliers[i] * d.r * sweep, ("arc", i, a0, a1))
    return g, si, ti


def _dijkstra(g: VisGraph, src: int, dst: int):
    dist = [math.inf] * len(g.points)
    prev: list[tuple[int, tuple] | None] = [None] * len(g.points)
    dist[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        if u == dst:
            break
        for v, w, geom in g.adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                prev[v] = (u, geom)
                heapq.heappush(heap, (nd, v))
    return dist, prev


def _assemble(g: VisGraph, prev, src: int, dst: int) -> WeightedPath:
    pieces = []
    nodes = [dst]
    v = dst
    while v != src:
        u, geom = prev[v]
        if geom[0] == "seg":
            pieces.append(segment(g.points[u], g.points[v]))
        else:
            i = geom[1]
            a_u, a_v = g.anchors[u][1], g.anchors[v][1]
            # arc edges were built ccw from geom[2] to geom[3]
            orient = "ccw" if a_u == geom[2] else "cw"
            pieces.append(arc_piece(g.disks[i], i, a_u, a_v, g.multipliers[i], orient))
        nodes.append(u)
        v = u
    pieces.reverse()
    nodes.reverse()
    return WeightedPath(pieces, nodes)


def obstacle_path(disks, multipliers, s, t, tol: float = 1e-9) -> WeightedPath:
    """Shortest ``s``-``t`` path avoiding all disk interiors, arcs priced by ``multipliers``."""
    g, si, ti = build_visgraph(disks, multipliers, s, t, tol)
    dist, prev = _dijkstra(g, si, ti)
    if math.isinf(dist[ti]):
        raise RuntimeError("target unreachable; the free space of disjoint disks is connected")
    return _assemble(g, prev, si, ti)


def _exact_multipliers(scene: Scene) -> list[float]:
    mults = []
    for d in scene.disks:
        if d.w == 0.0:
            mults.append(0.0)
        elif d.w >= HALF_PI:
            mults.append(1.0)
        else:
            raise MixedWeightError(f"disk {d.id} has weight {d.w}; exact paths need 0 or >= pi/2")
    return mults


def exact_path(scene: Scene, s, t) -> WeightedPath:
    """Exact optimum among obstacles (w >= pi/2) and zero-weight disks.

    Zero-weight disks behave as obstacles whose boundary is free to travel.
    """
    return obstacle_path(scene.disks, _exact_multipliers(scene), s, t, scene.tol)


# ------------------------------------------------------------- one disk

def _exterior_cost(d: Disk, m: float, q: Point, t: Point, tangents: list[float], tol: float) -> float:
    """Cheapest way from boundary point ``q`` to ``t`` without entering ``d``."""
    best = math.inf
    if segment_visible(q, t, [d], tol):
        best = q.dist(t)
    qa = d.angle_of(q)
    for ang in tangents:
        best = min(best, m * d.r * angular_distance(qa, ang) + d.point_at(ang).dist(t))
    return best


def single_disk_optimum(disk: Disk, s, t, tol: float = 1e-9) -> float:
    """Exact weighted distance from ``s`` on the boundary of ``disk`` to ``t`` with no other disk.

    ``t`` on the boundary: the better of the chord and the shorter arc.
    ``t`` outside: minimum over the exit point of an interior chord followed by
    the best exterior route, found by sampling then golden-section refinement.
    """
    s, t = Point(*s), Point(*t)
    if not disk.on_boundary(s, tol):
        raise ValueError("s must lie on the disk boundary")
    m = disk.arc_weight
    w = disk.w
    if disk.contains(t, tol):
        raise ValueError("t must lie outside the disk or on its boundary")
    sa = disk.angle_of(s)
    if disk.on_boundary(t, tol):
        dth = angular_distance(sa, disk.angle_of(t))
        best = m * disk.r * dth
        if w < HALF_PI:
            best = min(best, w * 2.0 * disk.r * math.sin(0.5 * dth))
        return best

    tangents = tangent_angles_from_point(t, disk, m, tol)
    best = _exterior_cost(disk, m, s, t, tangents, tol)
    if not math.isfinite(w) or w >= HALF_PI:
        return best

    def f(phi: float) -> float:
        q = disk.point_at(sa + phi)
        return w * s.dist(q) + _exterior_cost(disk, m, q, t, tangents, tol)

    grid = 720
    h = TWO_PI / grid
    vals = [f(j * h) for j in range(grid)]
    order = sorted(range(grid), key=vals.__getitem__)[:6]
    best = min(best, vals[order[0]])
    for j in order:
        res = minimize_scalar(f, bounds=((j - 1) * h, (j + 1) * h), method="bounded",
                              options={"xatol": 1e-12, "maxiter": 500})
        best = min(best, float(res.fun))
    return best
