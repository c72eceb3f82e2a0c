"""Planar primitives for circles: tangents, arcs, chords and visibility."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

# Default absolute tolerance for on-boundary and tangency tests.  Scenes
# replace it with 1e-9 times their diameter.
DEFAULT_TOL = 1e-9


class Point(NamedTuple):
    x: float
    y: float

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other[0], self.y - other[1])

    def dist(self, other) -> float:
        return math.hypot(self.x - other[0], self.y - other[1])


@dataclass(frozen=True)
class Disk:
    """Weighted disk.  ``w`` is the cost per unit length inside; ``math.inf`` marks an obstacle."""

    id: int
    cx: float
    cy: float
    r: float
    w: float

    @property
    def center(self) -> Point:
        return Point(self.cx, self.cy)

    @property
    def effective_weight(self) -> float:
        # interiors of disks at least this heavy are never worth entering
        return min(self.w, HALF_PI)

    @property
    def arc_weight(self) -> float:
        """Cost per unit length along the boundary: min of the two adjacent regions."""
        return min(1.0, self.w)

    @property
    def is_obstacle(self) -> bool:
        return self.w >= HALF_PI

    def point_at(self, angle: float) -> Point:
        return Point(self.cx + self.r * math.cos(angle), self.cy + self.r * math.sin(angle))

    def angle_of(self, p) -> float:
        return normalize_angle(math.atan2(p[1] - self.cy, p[0] - self.cx))

    def contains(self, p, tol: float = 0.0) -> bool:
        """True if ``p`` is strictly inside, by more than ``tol``."""
        return math.hypot(p[0] - self.cx, p[1] - self.cy) < self.r - tol

    def on_boundary(self, p, tol: float = DEFAULT_TOL) -> bool:
        return abs(math.hypot(p[0] - self.cx, p[1] - self.cy) - self.r) <= tol


@dataclass(frozen=True)
class Arc:
    disk_id: int
    start_angle: float
    end_angle: float
    orientation: str  # "ccw" or "cw"

    @property
    def sweep(self) -> float:
        """Swept angle in [0, 2*pi)."""
        if self.orientation == "ccw":
            return (self.end_angle - self.start_angle) % TWO_PI
        return (self.start_angle - self.end_angle) % TWO_PI

    def length(self, radius: float) -> float:
        return radius * self.sweep


def normalize_angle(a: float) -> float:
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    return 0.0 if a >= TWO_PI else a


def angular_distance(a: float, b: float) -> float:
    """Smaller of the two angular separations between ``a`` and ``b``, in [0, pi]."""
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def point_segment_distance(c, p, q) -> float:
    px, py = p[0], p[1]
    dx, dy = q[0] - px, q[1] - py
    ll = dx * dx + dy * dy
    if ll == 0.0:
        return math.hypot(c[0] - px, c[1] - py)
    t = ((c[0] - px) * dx + (c[1] - py) * dy) / ll
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(c[0] - (px + t * dx), c[1] - (py + t * dy))


def segment_crosses_interior(p, q, d: Disk, tol: float = 0.0) -> bool:
    """True iff the open segment ``pq`` enters the open interior of ``d``.

    Grazing the boundary does not count; neither does a penetration shallower
    than ``tol``.
    """
    return point_segment_distance(d.center, p, q) < d.r - tol


def segment_visible(p, q, disks, tol: float = 0.0) -> bool:
    return not any(segment_crosses_interior(p, q, d, tol) for d in disks)


def tangent_angles_from_point(p, d: Disk, multiplier: float = 1.0, tol: float = DEFAULT_TOL) -> list[float]:
    """Boundary angles where a path leaving ``p`` should meet ``d``.

    With ``multiplier == 1`` these are the ordinary tangency points.  For a
    boundary cost ``m < 1`` the optimal contact line is tangent to the
    concentric circle of radius ``m * r`` and meets the boundary at the
    intersection nearer to ``p``; for ``m == 0`` this is the closest point.
    Returns [] if ``p`` is inside, ``[angle(p)]`` if ``p`` is on the boundary.
    """
    dx, dy = p[0] - d.cx, p[1] - d.cy
    L = math.hypot(dx, dy)
    if abs(L - d.r) <= tol:
        return [normalize_angle(math.atan2(dy, dx))]
    if L < d.r:
        return []
    rho = multiplier * d.r
    psi = math.atan2(dy, dx)
    beta = math.acos(min(1.0, rho / L))
    h = math.sqrt(max(0.0, d.r * d.r - rho * rho))
    out: list[float] = []
    for phi in (psi + beta, psi - beta):
        nx, ny = math.cos(phi), math.sin(phi)
        fx, fy = d.cx + rho * nx, d.cy + rho * ny
        if h > 0.0:
            gx, gy = p[0] - fx, p[1] - fy
            g = math.hypot(gx, gy)
            fx, fy = fx + h * gx / g, fy + h * gy / g
        a = normalize_angle(math.atan2(fy - d.cy, fx - d.cx))
        if not any(angular_distance(a, b) * d.r <= tol for b in out):
            out.append(a)
    return out


def tangents_from_point(p, d: Disk, tol: float = DEFAULT_TOL) -> list[Point]:
    """Tangency points on ``d`` of the lines through ``p`` (0, 1 or 2 points)."""
    return [d.point_at(a) for a in tangent_angles_from_point(p, d, 1.0, tol)]


def common_tangent_angles(d1: Disk, d2: Disk, m1: float = 1.0, m2: float = 1.0,
                          tol: float = DEFAULT_TOL) -> list[tuple[float, float]]:
    """Endpoint angles ``(a1, a2)`` of the contact segments between two disjoint disks.

    Each segment lies on a common tangent of the circles of radii ``m1*r1``
    and ``m2*r2`` and joins the facing boundary intersections; with unit
    multipliers these are the four ordinary common tangents (external first).
    """
    Dx, Dy = d2.cx - d1.cx, d2.cy - d1.cy
    L = math.hypot(Dx, Dy)
    psi = math.atan2(Dy, Dx)
    rho1, rho2 = m1 * d1.r, m2 * d2.r
    h1 = math.sqrt(max(0.0, d1.r * d1.r - rho1 * rho1))
    h2 = math.sqrt(max(0.0, d2.r * d2.r - rho2 * rho2))
    out: list[tuple[float, float]] = []
    # line n.x = p with n.c1 - p = rho1 and n.c2 - p = s2 * rho2
    for s2 in (1.0, -1.0):
        cosv = (s2 * rho2 - rho1) / L
        if abs(cosv) > 1.0:
            continue
        beta = math.acos(cosv)
        for phi in (psi + beta, psi - beta):
            nx, ny = math.cos(phi), math.sin(phi)
            f1x, f1y = d1.cx - rho1 * nx, d1.cy - rho1 * ny
            f2x, f2y = d2.cx - s2 * rho2 * nx, d2.cy - s2 * rho2 * ny
            tx, ty = -ny, nx
            sgn = 1.0 if (f2x - f1x) * tx + (f2y - f1y) * ty >= 0.0 else -1.0
            e1x, e1y = f1x + sgn * h1 * tx, f1y + sgn * h1 * ty
            e2x, e2y = f2x - sgn * h2 * tx, f2y - sgn * h2 * ty
            a1 = normalize_angle(math.atan2(e1y - d1.cy, e1x - d1.cx))
            a2 = normalize_angle(math.atan2(e2y - d2.cy, e2x - d2.cx))
            if any(angular_distance(a1, b1) * d1.r <= tol and angular_distance(a2, b2) * d2.r <= tol
                   for b1, b2 in out):
                continue
            out.append((a1, a2))
    return out


def common_tangents(d1: Disk, d2: Disk, tol: float = DEFAULT_TOL) -> list[tuple[Point, Point]]:
    """The common tangent segments of two disjoint disks as (point on d1, point on d2)."""
    return [(d1.point_at(a1), d2.point_at(a2)) for a1, a2 in common_tangent_angles(d1, d2, 1.0, 1.0, tol)]


def chord_from_inscribed(R: float, theta: float) -> float:
    """Chord length ``2 R cos(theta)`` for the angle ``theta`` between chord and radius."""
    if not 0.0 <= theta < HALF_PI:
        raise ValueError(f"inscribed angle must lie in [0, pi/2), got {theta}")
    return 2.0 * R * math.cos(theta)


def arc_length(d: Disk, a: float, b: float, orientation: str) -> float:
    arc = Arc(d.id, normalize_angle(a), normalize_angle(b), orientation)
    return arc.length(d.r)


def arc_between(d: Disk, a, b, tol: float = DEFAULT_TOL) -> tuple[Arc, float]:
    """Shorter boundary arc from ``a`` to ``b`` (ties go counter-clockwise)."""
    for p in (a, b):
        if not d.on_boundary(p, tol):
            raise ValueError(f"point {tuple(p)} is not on the boundary of disk {d.id}")
    ta, tb = d.angle_of(a), d.angle_of(b)
    ccw = (tb - ta) % TWO_PI
    orientation = "ccw" if ccw <= TWO_PI - ccw else "cw"
    arc = Arc(d.id, ta, tb, orientation)
    return arc, arc.length(d.r)


def segment_circle_params(p, q, d: Disk) -> tuple[float, float] | None:
    """Parameters ``t0 <= t1`` where the line p + t (q - p) meets the circle, or None."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    fx, fy = p[0] - d.cx, p[1] - d.cy
    A = dx * dx + dy * dy
    if A == 0.0:
        return None
    B = 2.0 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - d.r * d.r
    disc = B * B - 4.0 * A * C
    if disc <= 0.0:
        return None
    sq = math.sqrt(disc)
    # numerically stable root pair
    qq = -0.5 * (B + math.copysign(sq, B))
    if qq == 0.0:
        return (-sq / (2 * A), sq / (2 * A))
    r1, r2 = qq / A, C / qq
    return (min(r1, r2), max(r1, r2))
