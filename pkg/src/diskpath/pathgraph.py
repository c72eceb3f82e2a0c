"""The discretization graph over Steiner nodes and terminals.

The graph is complete: every node pair is joined by exactly one edge whose
class and weight follow from the pair's geometry.

* two nodes of one disk: the cheaper of the shorter boundary arc and the
  interior chord (no chords through disks with weight >= pi/2);
* nodes of different disks that see each other: the straight segment;
* otherwise: the cheapest route that avoids every disk interior, paying
  ``min(1, w)`` per unit length along boundaries.

Edges are priced on demand inside the compiled Dijkstra rather than stored.
The avoiding route has a closed form.  Such a route touches a disk of
boundary cost ``m`` along lines tangent to the concentric circle of radius
``m * r``.  We precompute, per node and disk, the (at most two) contact
points, and all-pairs costs between the contact points of every pair of
disks.  A route then costs a node-to-contact term, an optional chain of
disks, and a contact-to-node term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels as K
from .discretize import TERMINAL, SteinerNode, SteinerSet
from .geometry import HALF_PI, Point, common_tangent_angles, segment_circle_params
from .obstacle import TerminalInsideObstacle, obstacle_path
from .paths import Piece, WeightedPath, arc_piece, segment
from .scene import Scene


class EdgeClass(str, Enum):
    BOUNDARY_ARC = "boundary_arc"
    INTERIOR_CHORD = "interior_chord"
    FREE_SEGMENT = "free_segment"
    CURVED_DETOUR = "curved_detour"


_CLASS = {
    K.ARC: EdgeClass.BOUNDARY_ARC,
    K.CHORD: EdgeClass.INTERIOR_CHORD,
    K.FREE: EdgeClass.FREE_SEGMENT,
    K.DETOUR: EdgeClass.CURVED_DETOUR,
    # an interior terminal's edge is named after its part outside the disk
    K.TWO_PHASE_FREE: EdgeClass.FREE_SEGMENT,
    K.TWO_PHASE_DETOUR: EdgeClass.CURVED_DETOUR,
}


class Unreachable(RuntimeError):
    pass


# ----------------------------------------------------------- pricing data

def _visible_many(x0, y0, x1, y1, disks, tol):
    ok = np.ones(x0.shape, dtype=bool)
    dx, dy = x1 - x0, y1 - y0
    ll = dx * dx + dy * dy
    safe = np.where(ll > 0.0, ll, 1.0)
    for d in disks:
        fx, fy = d.cx - x0, d.cy - y0
        t = np.where(ll > 0.0, np.clip((fx * dx + fy * dy) / safe, 0.0, 1.0), 0.0)
        ex, ey = fx - t * dx, fy - t * dy
        lim = d.r - tol
        if lim > 0.0:
            ok &= ex * ex + ey * ey >= lim * lim
    return ok


def contact_data(scene: Scene, X, Y, D, A, mults):
    """Contact angles and straight costs from each point to each disk.

    A point on disk ``i`` (``D == i``) reaches its own disk at its own angle
    for free.  Contacts whose segment would cut a disk get cost ``inf``.
    """
    V, n = X.shape[0], scene.n
    EANG = np.zeros((V, n, 2))
    ECOST = np.full((V, n, 2), np.inf)
    for c, d in enumerate(scene.disks):
        dx, dy = X - d.cx, Y - d.cy
        L = np.hypot(dx, dy)
        rho = mults[c] * d.r
        psi = np.arctan2(dy, dx)
        outside = L > d.r
        beta = np.arccos(np.clip(rho / np.where(outside, L, 1.0), -1.0, 1.0))
        h = math.sqrt(max(0.0, d.r * d.r - rho * rho))
        for s, sign in enumerate((1.0, -1.0)):
            if s == 1 and rho == 0.0:
                break
            phi = psi + sign * beta
            fx, fy = d.cx + rho * np.cos(phi), d.cy + rho * np.sin(phi)
            gx, gy = X - fx, Y - fy
            g = np.hypot(gx, gy)
            g = np.where(g > 0.0, g, 1.0)
            ex, ey = fx + h * gx / g, fy + h * gy / g
            ang = np.mod(np.arctan2(ey - d.cy, ex - d.cx), 2.0 * math.pi)
            cost = np.hypot(X - ex, Y - ey)
            vis = _visible_many(X, Y, ex, ey, scene.disks, scene.tol) & outside
            EANG[:, c, s] = ang
            ECOST[:, c, s] = np.where(vis, cost, np.inf)
        own = D == c
        EANG[own, c, 0] = A[own]
        ECOST[own, c, 0] = 0.0
        ECOST[own, c, 1] = np.inf
    return EANG, ECOST


@dataclass
class TangentNet:
    """Contact points of the common contact lines of every disk pair, with all-pairs costs."""

    disk: np.ndarray
    angle: np.ndarray
    dist: np.ndarray

    @classmethod
    def build(cls, scene: Scene, mults) -> "TangentNet":
        disk, angle = [], []
        seg = []
        for a in range(scene.n):
            for b in range(a + 1, scene.n):
                da, db = scene.disks[a], scene.disks[b]
                for aa, ab in common_tangent_angles(da, db, mults[a], mults[b], scene.tol):
                    i = len(disk)
                    disk += [a, b]
                    angle += [aa, ab]
                    seg.append((i, i + 1, da.point_at(aa), db.point_at(ab)))
        m = len(disk)
        disk_arr = np.array(disk, dtype=np.int64)
        angle_arr = np.array(angle, dtype=np.float64)
        D = np.full((m, m), np.inf)
        for i in range(m):
            c = disk[i]
            for j in range(m):
                if disk[j] == c:
                    D[i, j] = mults[c] * scene.disks[c].r * K.angdist(angle[i], angle[j])
        if seg:
            p = np.array([s[2] for s in seg])
            q = np.array([s[3] for s in seg])
            vis = _visible_many(p[:, 0], p[:, 1], q[:, 0], q[:, 1], scene.disks, scene.tol)
            for (i, j, pa, pb), ok in zip(seg, vis):
                if ok:
                    D[i, j] = D[j, i] = min(D[i, j], pa.dist(pb))
        for k in range(m):
            D = np.minimum(D, D[:, k, None] + D[None, k, :])
        return cls(disk_arr, angle_arr, D)

    def costs(self, EANG, ECOST, mults, radii):
        """``F``: cost from each point to each contact point; ``G``: the same through the net."""
        V, m = EANG.shape[0], self.disk.shape[0]
        F = np.full((V, m), np.inf)
        for y in range(m):
            c = self.disk[y]
            scale = mults[c] * radii[c]
            for s in range(2):
                d = np.abs(EANG[:, c, s] - self.angle[y]) % (2.0 * math.pi)
                d = np.minimum(d, 2.0 * math.pi - d)
                F[:, y] = np.minimum(F[:, y], ECOST[:, c, s] + scale * d)
        G = F.copy()
        for y in range(m):
            G = np.minimum(G, F[:, y, None] + self.dist[None, y, :])
        return F, G


def arc_multipliers(scene: Scene) -> np.ndarray:
    return np.array([d.arc_weight for d in scene.disks], dtype=np.float64)


def chord_multipliers(scene: Scene) -> np.ndarray:
    return np.array([d.w if d.w < HALF_PI else np.inf for d in scene.disks], dtype=np.float64)


# ------------------------------------------------------------------ graph

class PathGraph:
    """Complete graph over ``nodes``; terminals are added with :meth:`insert_terminal`."""

    def __init__(self, scene: Scene, nodes, epsilon: float | None = None):
        self.scene = scene
        self.nodes: list[SteinerNode] = list(nodes)
        self.epsilon = epsilon
        self.inside: dict[int, int] = {}
        self._ctx = None
        self._mults = arc_multipliers(scene)
        self._net = None

    def __len__(self) -> int:
        return len(self.nodes)

    def position(self, u: int) -> Point:
        v = self.nodes[u]
        if v.point is not None:
            return Point(*v.point)
        return self.scene.disks[v.disk].point_at(v.angle)

    @property
    def positions(self) -> np.ndarray:
        return np.array([self.position(u) for u in range(len(self.nodes))], dtype=np.float64).reshape(-1, 2)

    # -- terminals
    def insert_terminal(self, p) -> int:
        """Add point ``p`` (or return the node already there)."""
        p = Point(float(p[0]), float(p[1]))
        tol = self.scene.tol
        for u in range(len(self.nodes)):
            if self.position(u).dist(p) <= tol:
                return u
        node = None
        for i, d in enumerate(self.scene.disks):
            dist = math.hypot(p.x - d.cx, p.y - d.cy)
            if abs(dist - d.r) <= tol:
                node = SteinerNode(i, d.angle_of(p), TERMINAL)
                break
            if dist < d.r:
                if math.isinf(d.w):
                    raise TerminalInsideObstacle(f"point {tuple(p)} lies inside obstacle {d.id}")
                node = SteinerNode(-1, math.nan, TERMINAL, point=p)
                self.inside[len(self.nodes)] = i
                break
        if node is None:
            node = SteinerNode(-1, math.nan, TERMINAL, point=p)
        self.nodes.append(node)
        self._ctx = None
        return len(self.nodes) - 1

    # -- pricing
    @property
    def net(self) -> TangentNet:
        if self._net is None:
            self._net = TangentNet.build(self.scene, self._mults)
        return self._net

    def _point_arrays(self):
        P = self.positions
        D = np.array([v.disk for v in self.nodes], dtype=np.int64)
        A = np.array([v.angle if v.disk >= 0 else 0.0 for v in self.nodes], dtype=np.float64)
        return P[:, 0].copy(), P[:, 1].copy(), D, A

    def context(self):
        if self._ctx is not None:
            return self._ctx
        sc = self.scene
        X, Y, D, A = self._point_arrays()
        CX = np.array([d.cx for d in sc.disks])
        CY = np.array([d.cy for d in sc.disks])
        CR = np.array([d.r for d in sc.disks])
        EANG, ECOST = contact_data(sc, X, Y, D, A, self._mults)
        specials = sorted(self.inside)
        for u in specials:
            ECOST[u] = np.inf
        F, G = self.net.costs(EANG, ECOST, self._mults, CR)
        V = len(self.nodes)
        SPROW = np.full(V, -1, dtype=np.int64)
        ROWS = np.zeros((len(specials), V))
        RCLS = np.full((len(specials), V), K.NO_EDGE, dtype=np.int64)
        for r, u in enumerate(specials):
            SPROW[u] = r
        ctx = (X, Y, D, A, CX, CY, CR, chord_multipliers(sc), self._mults,
               EANG, ECOST, F, G, SPROW, ROWS, RCLS, float(sc.tol))
        for r, u in enumerate(specials):
            row, cls = self._two_phase(u, ctx)
            ROWS[r] = row
            RCLS[r] = cls
        for r, u in enumerate(specials):
            for r2, v in enumerate(specials):
                if u == v:
                    ROWS[r, v], RCLS[r, v] = 0.0, K.NO_EDGE
                elif self.inside[u] == self.inside[v]:
                    w = sc.disks[self.inside[u]].w * self.position(u).dist(self.position(v))
                    ROWS[r, v], RCLS[r, v] = w, K.CHORD
                else:
                    ROWS[r, v], RCLS[r, v] = np.inf, K.NO_EDGE
        self._ctx = ctx
        return ctx

    def _exit_points(self, u: int):
        """Where the segment from interior terminal ``u`` towards each node leaves its disk."""
        i = self.inside[u]
        d = self.scene.disks[i]
        p = self.position(u)
        P = self.positions
        dx, dy = P[:, 0] - p.x, P[:, 1] - p.y
        fx, fy = p.x - d.cx, p.y - d.cy
        a = dx * dx + dy * dy
        b = 2.0 * (fx * dx + fy * dy)
        c = fx * fx + fy * fy - d.r * d.r
        disc = np.sqrt(np.maximum(b * b - 4.0 * a * c, 0.0))
        safe_a = np.where(a > 0.0, a, 1.0)
        denom = -b - disc
        t1 = np.where(b > 0.0, 2.0 * c / np.where(denom != 0.0, denom, -1.0), (-b + disc) / (2.0 * safe_a))
        t1 = np.where(a > 0.0, t1, 0.0)
        BX, BY = p.x + t1 * dx, p.y + t1 * dy
        BA = np.mod(np.arctan2(BY - d.cy, BX - d.cx), 2.0 * math.pi)
        # snap onto the circle so contact data treats them as boundary points
        BX, BY = d.cx + d.r * np.cos(BA), d.cy + d.r * np.sin(BA)
        return BX, BY, BA

    def _two_phase(self, u: int, ctx):
        i = self.inside[u]
        BX, BY, BA = self._exit_points(u)
        BD = np.full(BX.shape, i, dtype=np.int64)
        EBA, EBC = contact_data(self.scene, BX, BY, BD, BA, self._mults)
        _, GB = self.net.costs(EBA, EBC, self._mults, ctx[6])
        p = self.position(u)
        return K.two_phase_row(p.x, p.y, float(self.scene.disks[i].w), i, BX, BY, BA, EBA, EBC, GB, ctx)

    # -- queries
    def edge_weight(self, u: int, v: int) -> tuple[EdgeClass, float]:
        if u == v:
            raise ValueError("edge_weight needs two distinct nodes")
        w, c = K.pair_weight(u, v, self.context())
        if c == K.NO_EDGE:
            return None, math.inf
        return _CLASS[int(c)], float(w)

    def _raw(self, u: int, v: int) -> tuple[int, float]:
        w, c = K.pair_weight(u, v, self.context())
        return int(c), float(w)

    def weight_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense weights and class codes of the complete graph (small graphs only)."""
        W, C = K.weight_matrix(self.context())
        return W, C

    def edges(self):
        """Iterate ``(u, v, EdgeClass, weight)`` over unordered pairs."""
        W, C = self.weight_matrix()
        V = len(self.nodes)
        for u in range(V):
            for v in range(u + 1, V):
                if C[u, v] != K.NO_EDGE:
                    yield u, v, _CLASS[int(C[u, v])], float(W[u, v])

    def distances_from(self, src: int) -> np.ndarray:
        dist, _ = K.dijkstra_implicit(src, -1, self.context())
        return dist

    def shortest_path(self, s_id: int, t_id: int) -> WeightedPath:
        if s_id == t_id:
            raise ValueError("source and target must differ")
        dist, prev = K.dijkstra_implicit(s_id, t_id, self.context())
        if not math.isfinite(dist[t_id]):
            raise Unreachable(f"node {t_id} is unreachable from {s_id}")
        chain = [t_id]
        while chain[-1] != s_id:
            chain.append(int(prev[chain[-1]]))
        chain.reverse()
        path = WeightedPath(nodes=chain)
        for u, v in zip(chain, chain[1:]):
            cls, _ = self._raw(u, v)
            path.pieces.extend(self.edge_pieces(u, v))
            path.edge_classes.append(_CLASS[cls].value)
        path.graph_weight = float(dist[t_id])
        return path

    # -- geometry
    def _detour_pieces(self, p, q) -> list[Piece]:
        return obstacle_path(self.scene.disks, self._mults, p, q, self.scene.tol).pieces

    def edge_pieces(self, u: int, v: int) -> list[Piece]:
        """Geometric realization of edge ``u -> v``."""
        cls, _ = self._raw(u, v)
        sc = self.scene
        pu, pv = self.position(u), self.position(v)
        if cls == K.ARC:
            i = self.nodes[u].disk
            return [arc_piece(sc.disks[i], i, self.nodes[u].angle, self.nodes[v].angle, self._mults[i])]
        if cls == K.CHORD:
            i = self.nodes[u].disk if u not in self.inside else self.inside[u]
            return [segment(pu, pv, sc.disks[i].w)]
        if cls == K.FREE:
            return [segment(pu, pv)]
        if cls == K.DETOUR:
            return self._detour_pieces(pu, pv)
        if cls in (K.TWO_PHASE_FREE, K.TWO_PHASE_DETOUR):
            if u not in self.inside:
                return WeightedPath(self.edge_pieces(v, u)).reversed().pieces
            i = self.inside[u]
            d = sc.disks[i]
            # exit point, recomputed as in pricing
            params = segment_circle_params(pu, pv, d)
            t1 = params[1]
            b = d.point_at(d.angle_of((pu.x + t1 * (pv.x - pu.x), pu.y + t1 * (pv.y - pu.y))))
            out = [segment(pu, b, d.w)]
            if cls == K.TWO_PHASE_FREE:
                out.append(segment(b, pv))
            else:
                out.extend(self._detour_pieces(b, pv))
            return out
        raise Unreachable(f"no edge between {u} and {v}")


# ---------------------------------------------------------- functional API

def build_graph(scene: Scene, steiner: SteinerSet) -> PathGraph:
    return PathGraph(scene, steiner.nodes, steiner.epsilon)


def insert_terminal(graph: PathGraph, p, scene: Scene | None = None) -> int:
    return graph.insert_terminal(p)


def shortest_path(graph: PathGraph, s_id: int, t_id: int) -> WeightedPath:
    return graph.shortest_path(s_id, t_id)


def edge_weight(u: SteinerNode, v: SteinerNode, scene: Scene) -> tuple[EdgeClass, float]:
    """Class and weight of the edge between two standalone nodes."""
    g = PathGraph(scene, [u, v])
    return g.edge_weight(0, 1)


def route(scene: Scene, s, t, epsilon: float, steiner: SteinerSet | None = None) -> tuple[WeightedPath, PathGraph]:
    """Approximate shortest ``s``-``t`` path in the discretization graph."""
    from .discretize import build_steiner_set

    if steiner is None:
        steiner = build_steiner_set(scene, epsilon)
    g = build_graph(scene, steiner)
    si = g.insert_terminal(s)
    ti = g.insert_terminal(t)
    return g.shortest_path(si, ti), g


# ------------------------------------------------------------------ audit

class AuditError(ValueError):
    pass


def _price_segment(scene: Scene, p: Point, q: Point) -> float:
    ts = [0.0, 1.0]
    for d in scene.disks:
        params = segment_circle_params(p, q, d)
        if params is not None:
            ts.extend(t for t in params if 0.0 < t < 1.0)
    ts.sort()
    total = []
    dx, dy = q.x - p.x, q.y - p.y
    for a, b in zip(ts, ts[1:]):
        if b <= a:
            continue
        mx, my = p.x + 0.5 * (a + b) * dx, p.y + 0.5 * (a + b) * dy
        length = (b - a) * math.hypot(dx, dy)
        mult = 1.0
        for d in scene.disks:
            if math.hypot(mx - d.cx, my - d.cy) < d.r - scene.tol:
                mult = d.w
                break
        if length > 0.0:
            total.append(mult * length)
    return math.fsum(total)


def audit_path(scene: Scene, path: WeightedPath, tol: float | None = None) -> float:
    """Re-price ``path`` from its geometry alone.

    Segments are cut where they cross disk boundaries and each sub-piece is
    charged the weight of the region containing its midpoint; arcs are
    charged ``min(1, w)`` of their disk.  Raises :class:`AuditError` if the
    pieces do not chain or an arc endpoint is off its circle.
    """
    tol = scene.tol if tol is None else tol
    parts = []
    for k, pc in enumerate(path.pieces):
        if k and Point(*path.pieces[k - 1].end).dist(pc.start) > tol:
            raise AuditError(f"pieces {k - 1} and {k} do not chain")
        if pc.kind == "seg":
            parts.append(_price_segment(scene, Point(*pc.start), Point(*pc.end)))
        else:
            d = scene.disks[pc.disk]
            if not (d.on_boundary(pc.start, tol) and d.on_boundary(pc.end, tol)):
                raise AuditError(f"arc piece {k} leaves the boundary of disk {pc.disk}")
            a0, a1 = d.angle_of(pc.start), d.angle_of(pc.end)
            sweep = (a1 - a0) % (2.0 * math.pi) if pc.orientation == "ccw" else (a0 - a1) % (2.0 * math.pi)
            if d.r * min(sweep, 2.0 * math.pi - sweep) <= tol:
                sweep = 0.0
            if sweep > 0.0:
                parts.append(min(1.0, d.w) * d.r * sweep)
    return math.fsum(parts)
