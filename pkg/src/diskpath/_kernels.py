"""Compiled inner loops: pair pricing and Dijkstra over implicit complete graphs.

All functions take a pricing context ``ctx``, a tuple of arrays built by
:mod:`diskpath.pathgraph`:

    0 NX, 1 NY     node coordinates
    2 ND           node disk index (-1 for nodes not on a boundary)
    3 NA           node angle on its disk
    4 CX, 5 CY, 6 CR   disk centers and radii
    7 WCH          chord multiplier per disk (inf when chords are not allowed)
    8 MULT         arc multiplier per disk, min(1, w)
    9 EANG, 10 ECOST   (V, n, 2) contact angles/costs from each node to each disk
    11 F, 12 G     (V, m) costs to the fixed tangent points
    13 SPROW       row index into ROWS for specially priced nodes, else -1
    14 ROWS, 15 RCLS   precomputed weights/classes for those nodes
    16 tol
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

ARC = 0
CHORD = 1
FREE = 2
DETOUR = 3
# terminal strictly inside a disk: interior stretch followed by a free segment / detour
TWO_PHASE_FREE = 4
TWO_PHASE_DETOUR = 5
NO_EDGE = 6

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def seg_visible(x0, y0, x1, y1, CX, CY, CR, tol):
    dx = x1 - x0
    dy = y1 - y0
    ll = dx * dx + dy * dy
    for c in range(CX.shape[0]):
        fx = CX[c] - x0
        fy = CY[c] - y0
        t = 0.0
        if ll > 0.0:
            t = (fx * dx + fy * dy) / ll
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
        ex = fx - t * dx
        ey = fy - t * dy
        lim = CR[c] - tol
        if lim > 0.0 and ex * ex + ey * ey < lim * lim:
            return False
    return True


@njit(cache=True)
def angdist(a, b):
    d = abs(a - b)
    if d >= TWO_PI:
        d = d % TWO_PI
    if d > math.pi:
        d = TWO_PI - d
    return d


@njit(cache=True)
def detour_rows(Eu, Cu, Gu, Ev, Cv, Fv, MULT, CR):
    """Cheapest interior-avoiding route between two points given their contact data."""
    best = np.inf
    for c in range(CR.shape[0]):
        m = MULT[c] * CR[c]
        for a in range(2):
            cu = Cu[c, a]
            if cu == np.inf:
                continue
            for b in range(2):
                cv = Cv[c, b]
                if cv == np.inf:
                    continue
                val = cu + m * angdist(Eu[c, a], Ev[c, b]) + cv
                if val < best:
                    best = val
    for y in range(Gu.shape[0]):
        val = Gu[y] + Fv[y]
        if val < best:
            best = val
    return best


@njit(cache=True)
def pair_weight(u, v, ctx):
    NX, NY, ND, NA, CX, CY, CR, WCH, MULT, EANG, ECOST, F, G, SPROW, ROWS, RCLS, tol = ctx
    if u > v:
        u, v = v, u
    if SPROW[u] >= 0:
        r = SPROW[u]
        return ROWS[r, v], RCLS[r, v]
    if SPROW[v] >= 0:
        r = SPROW[v]
        return ROWS[r, u], RCLS[r, u]
    du = ND[u]
    if du >= 0 and du == ND[v]:
        dth = angdist(NA[u], NA[v])
        arc = MULT[du] * CR[du] * dth
        if WCH[du] < np.inf:
            ch = WCH[du] * 2.0 * CR[du] * math.sin(0.5 * dth)
            if ch < arc:
                return ch, CHORD
        return arc, ARC
    if seg_visible(NX[u], NY[u], NX[v], NY[v], CX, CY, CR, tol):
        return math.hypot(NX[v] - NX[u], NY[v] - NY[u]), FREE
    w = detour_rows(EANG[u], ECOST[u], G[u], EANG[v], ECOST[v], F[v], MULT, CR)
    return w, DETOUR


@njit(cache=True)
def weight_matrix(ctx):
    V = ctx[0].shape[0]
    W = np.zeros((V, V))
    C = np.full((V, V), NO_EDGE, dtype=np.int64)
    for u in range(V):
        for v in range(u + 1, V):
            w, c = pair_weight(u, v, ctx)
            W[u, v] = w
            W[v, u] = w
            C[u, v] = c
            C[v, u] = c
    return W, C


@njit(cache=True)
def relax_row(u, du_best, ctx, dist, prev, done):
    """Relax every unsettled node from ``u``; the pricing of ``pair_weight`` inlined."""
    NX, NY, ND, NA, CX, CY, CR, WCH, MULT, EANG, ECOST, F, G, SPROW, ROWS, RCLS, tol = ctx
    V = NX.shape[0]
    ux = NX[u]
    uy = NY[u]
    du = ND[u]
    ua = NA[u]
    special_u = SPROW[u] >= 0
    arc_scale = 0.0
    chord_scale = np.inf
    if du >= 0:
        arc_scale = MULT[du] * CR[du]
        if WCH[du] < np.inf:
            chord_scale = WCH[du] * 2.0 * CR[du]
    for v in range(V):
        if done[v]:
            continue
        if special_u or SPROW[v] >= 0:
            w, c = pair_weight(u, v, ctx)
        elif du >= 0 and du == ND[v]:
            dth = angdist(ua, NA[v])
            w = arc_scale * dth
            if chord_scale < np.inf:
                ch = chord_scale * math.sin(0.5 * dth)
                if ch < w:
                    w = ch
        elif seg_visible(ux, uy, NX[v], NY[v], CX, CY, CR, tol):
            w = math.hypot(NX[v] - ux, NY[v] - uy)
        elif u < v:
            w = detour_rows(EANG[u], ECOST[u], G[u], EANG[v], ECOST[v], F[v], MULT, CR)
        else:
            w = detour_rows(EANG[v], ECOST[v], G[v], EANG[u], ECOST[u], F[u], MULT, CR)
        nd = du_best + w
        if nd < dist[v]:
            dist[v] = nd
            prev[v] = u


@njit(cache=True)
def dijkstra_implicit(src, dst, ctx):
    """O(V^2) Dijkstra on the complete graph; stops once ``dst`` is settled (dst < 0: never).

    The scan picks the smallest tentative distance with the smallest node id.
    """
    V = ctx[0].shape[0]
    dist = np.full(V, np.inf)
    prev = np.full(V, -1, dtype=np.int64)
    done = np.zeros(V, dtype=np.bool_)
    dist[src] = 0.0
    for _ in range(V):
        u = -1
        best = np.inf
        for i in range(V):
            if not done[i] and dist[i] < best:
                best = dist[i]
                u = i
        if u < 0:
            break
        done[u] = True
        if u == dst:
            break
        relax_row(u, best, ctx, dist, prev, done)
    return dist, prev


@njit(cache=True)
def dijkstra_dense(W, src):
    """Dijkstra on a dense matrix; ``inf`` marks a missing edge, zero weights are edges."""
    V = W.shape[0]
    dist = np.full(V, np.inf)
    prev = np.full(V, -1, dtype=np.int64)
    done = np.zeros(V, dtype=np.bool_)
    dist[src] = 0.0
    for _ in range(V):
        u = -1
        best = np.inf
        for i in range(V):
            if not done[i] and dist[i] < best:
                best = dist[i]
                u = i
        if u < 0:
            break
        done[u] = True
        for v in range(V):
            if not done[v]:
                nd = best + W[u, v]
                if nd < dist[v]:
                    dist[v] = nd
                    prev[v] = u
    return dist, prev


@njit(cache=True)
def all_pairs_dense(W):
    V = W.shape[0]
    D = np.empty((V, V))
    for s in range(V):
        d, _ = dijkstra_dense(W, s)
        D[s] = d
    return D


@njit(cache=True)
def all_pairs_sparse(indptr, indices, weights):
    """All-pairs distances on a CSR graph via binary-heap Dijkstra from each source."""
    V = indptr.shape[0] - 1
    D = np.full((V, V), np.inf)
    cap = indices.shape[0] + V + 1
    hk = np.empty(cap)
    hv = np.empty(cap, dtype=np.int64)
    for s in range(V):
        dist = D[s]
        dist[s] = 0.0
        n = 0
        hk[0] = 0.0
        hv[0] = s
        n = 1
        while n > 0:
            d = hk[0]
            u = hv[0]
            n -= 1
            # sift down the last element
            lk = hk[n]
            lv = hv[n]
            i = 0
            while True:
                c = 2 * i + 1
                if c >= n:
                    break
                if c + 1 < n and (hk[c + 1] < hk[c] or (hk[c + 1] == hk[c] and hv[c + 1] < hv[c])):
                    c += 1
                if hk[c] < lk or (hk[c] == lk and hv[c] < lv):
                    hk[i] = hk[c]
                    hv[i] = hv[c]
                    i = c
                else:
                    break
            hk[i] = lk
            hv[i] = lv
            if d > dist[u]:
                continue
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                nd = d + weights[e]
                if nd < dist[v]:
                    dist[v] = nd
                    # sift up
                    j = n
                    n += 1
                    while j > 0:
                        p = (j - 1) // 2
                        if hk[p] > nd or (hk[p] == nd and hv[p] > v):
                            hk[j] = hk[p]
                            hv[j] = hv[p]
                            j = p
                        else:
                            break
                    hk[j] = nd
                    hv[j] = v
    return D


@njit(cache=True)
def two_phase_row(px, py, wi, disk, BX, BY, BA, EBA, EBC, GB, ctx):
    """Weights from an interior terminal of disk ``disk`` to every node.

    ``BX, BY`` is where the straight segment towards each node leaves the
    disk; ``EBA, EBC, GB`` are the contact data of those exit points.
    """
    NX, NY, ND, NA, CX, CY, CR, WCH, MULT, EANG, ECOST, F, G, SPROW, ROWS, RCLS, tol = ctx
    V = NX.shape[0]
    row = np.full(V, np.inf)
    cls = np.full(V, NO_EDGE, dtype=np.int64)
    for v in range(V):
        if SPROW[v] >= 0:
            continue
        if ND[v] == disk:
            row[v] = wi * math.hypot(NX[v] - px, NY[v] - py)
            cls[v] = CHORD
            continue
        inner = wi * math.hypot(BX[v] - px, BY[v] - py)
        if seg_visible(BX[v], BY[v], NX[v], NY[v], CX, CY, CR, tol):
            row[v] = inner + math.hypot(NX[v] - BX[v], NY[v] - BY[v])
            cls[v] = TWO_PHASE_FREE
        else:
            row[v] = inner + detour_rows(EBA[v], EBC[v], GB[v], EANG[v], ECOST[v], F[v], MULT, CR)
            cls[v] = TWO_PHASE_DETOUR
    return row, cls
