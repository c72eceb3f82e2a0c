"""Cone-based sparsification of the discretization graph.

Around each node the plane is split into ``2k`` cones of angle ``pi / k``.
The first cone starts on the counter-clockwise tangent direction of the
node's disk and cones are numbered clockwise; a node off every boundary
uses the +x axis instead.  In each cone the node keeps one edge: to the
closest visible node on the closest disk that has a visible node there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .discretize import SteinerSet
from .pathgraph import _CLASS, EdgeClass, PathGraph
from .scene import Scene

_VISIBLE = (K.ARC, K.CHORD, K.FREE, K.TWO_PHASE_FREE)


def spanner_bound(k: int) -> float:
    """Stretch guaranteed for ``k >= 4``: 1 / (1 - 2 sin(pi / (2k)))."""
    return 1.0 / (1.0 - 2.0 * math.sin(math.pi / (2.0 * k)))


@dataclass
class YaoGraph:
    k: int
    graph: PathGraph
    edges: dict[tuple[int, int], tuple[EdgeClass, float]] = field(default_factory=dict)
    # per node: (cone, chosen neighbour)
    choices: list[list[tuple[int, int]]] = field(default_factory=list)

    @property
    def n_nodes(self) -> int:
        return len(self.graph)

    @property
    def theta(self) -> float:
        return math.pi / self.k

    def csr(self):
        V = self.n_nodes
        adj: list[list[tuple[int, float]]] = [[] for _ in range(V)]
        for (u, v), (_, w) in self.edges.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        indptr = np.zeros(V + 1, dtype=np.int64)
        for u in range(V):
            indptr[u + 1] = indptr[u] + len(adj[u])
        indices = np.array([v for a in adj for v, _ in a], dtype=np.int64)
        weights = np.array([w for a in adj for _, w in a], dtype=np.float64)
        return indptr, indices, weights

    def to_json(self) -> dict:
        return {"k": self.k, "nodes": self.n_nodes,
                "edges": [{"u": u, "v": v, "class": c.value, "weight": w}
                          for (u, v), (c, w) in sorted(self.edges.items())]}


def cone_index(frame: float, direction: np.ndarray, k: int) -> np.ndarray:
    """Clockwise cone of each direction; cone ``j`` is ``[frame - j theta, frame - (j+1) theta)``."""
    theta = math.pi / k
    off = np.mod(frame - direction, 2.0 * math.pi)
    idx = np.floor(off / theta).astype(np.int64)
    return np.minimum(idx, 2 * k - 1)


def _frame(graph: PathGraph, u: int) -> float:
    node = graph.nodes[u]
    if node.disk >= 0:
        return node.angle + 0.5 * math.pi
    return 0.0


def build_yao(scene: Scene, steiner, k: int) -> YaoGraph:
    """Yao graph over a Steiner set, a list of nodes, or the nodes of an existing :class:`PathGraph`."""
    if int(k) != k or k < 4:
        raise ValueError("the cone parameter k must be an integer >= 4")
    k = int(k)
    if isinstance(steiner, PathGraph):
        graph = steiner
    elif isinstance(steiner, SteinerSet):
        graph = PathGraph(scene, steiner.nodes, steiner.epsilon)
    else:
        graph = PathGraph(scene, steiner)
    V = len(graph)
    W, C = graph.weight_matrix()
    P = graph.positions
    # a node's "disk" for distance purposes; off-boundary terminals act as point disks
    home = np.array([n.disk if n.disk >= 0 else graph.inside.get(u, -1) for u, n in enumerate(graph.nodes)])
    group = np.where(home >= 0, home, scene.n + np.arange(V))
    centers = np.array([[d.cx, d.cy] for d in scene.disks]).reshape(-1, 2)
    radii = np.array([d.r for d in scene.disks])
    angles = np.array([n.angle if n.disk >= 0 else math.inf for n in graph.nodes])
    yao = YaoGraph(k, graph)
    visible = np.isin(C, _VISIBLE)
    for u in range(V):
        chosen: list[tuple[int, int]] = []
        cand = np.flatnonzero(visible[u])
        cand = cand[cand != u]
        if cand.size:
            diff = P[cand] - P[u]
            dirs = np.arctan2(diff[:, 1], diff[:, 0])
            cones = cone_index(_frame(graph, u), dirs, k)
            eu = np.hypot(diff[:, 0], diff[:, 1])
            g = group[cand]
            gd = np.empty(cand.size)
            on_disk = g < scene.n
            dc = np.hypot(*(centers[g[on_disk]] - P[u]).T) - radii[g[on_disk]] if on_disk.any() else np.empty(0)
            gd[on_disk] = np.maximum(0.0, dc)
            gd[~on_disk] = eu[~on_disk]
            gd[g == group[u]] = 0.0
            for j in range(2 * k):
                sel = np.flatnonzero(cones == j)
                if not sel.size:
                    continue
                # closest disk, ties by id; then closest node on it, ties by angle
                best = sel[np.lexsort((g[sel], gd[sel]))[0]]
                on = sel[g[sel] == g[best]]
                v = int(cand[on[np.lexsort((angles[cand[on]], eu[on]))[0]]])
                chosen.append((j, v))
                key = (min(u, v), max(u, v))
                yao.edges[key] = (_CLASS[int(C[u, v])], float(W[u, v]))
        yao.choices.append(chosen)
    return yao


def complete_distances(graph: PathGraph) -> np.ndarray:
    """All-pairs distances in the complete graph."""
    W, C = graph.weight_matrix()
    W = np.where(C == K.NO_EDGE, np.inf, W)
    np.fill_diagonal(W, 0.0)
    return K.all_pairs_dense(W)


def spanning_audit(yao: YaoGraph, graph: PathGraph, dg: np.ndarray | None = None) -> float:
    """Largest ratio of Yao distance to complete-graph distance over node pairs.

    ``dg`` may carry :func:`complete_distances` of ``graph`` when several Yao
    graphs are audited against the same complete graph.
    """
    if len(graph) != yao.n_nodes or any(a != b for a, b in zip(graph.nodes, yao.graph.nodes)):
        raise ValueError("the Yao graph and the path graph have different node sets")
    if dg is None:
        dg = complete_distances(graph)
    dy = K.all_pairs_sparse(*yao.csr())
    return ratio_max(dy, dg)


def ratio_max(dy: np.ndarray, dg: np.ndarray) -> float:
    off = ~np.eye(dg.shape[0], dtype=bool)
    a, b = dy[off], dg[off]
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(b > 0.0, a / np.where(b > 0.0, b, 1.0), np.where(a > 0.0, np.inf, 1.0))
    return float(r.max()) if r.size else 1.0


def build_complete(scene: Scene, steiner: SteinerSet) -> PathGraph:
    return PathGraph(scene, steiner.nodes, steiner.epsilon)
