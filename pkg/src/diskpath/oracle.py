"""Reference optima from a uniform angular grid of boundary nodes.

The grid shares edge pricing with the main graph but none of its node
placement, so comparing the two checks the placement rule on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .discretize import build_steiner_set, uniform_nodes
from .pathgraph import PathGraph, route
from .paths import WeightedPath
from .scene import Scene


@dataclass
class GridReference:
    scene: Scene
    h: float
    graph: PathGraph

    @property
    def per_disk(self) -> int:
        return int(math.ceil(2.0 * math.pi / self.h))


def grid_reference(scene: Scene, h: float) -> GridReference:
    if not h > 0.0:
        raise ValueError("grid spacing must be positive")
    return GridReference(scene, h, PathGraph(scene, uniform_nodes(scene, h)))


def reference_path(scene: Scene, s, t, h: float) -> WeightedPath:
    g = grid_reference(scene, h).graph
    si, ti = g.insert_terminal(s), g.insert_terminal(t)
    return g.shortest_path(si, ti)


def reference_optimum(scene: Scene, s, t, h: float) -> float:
    """Shortest ``s``-``t`` weight over the uniform grid of spacing ``h`` radians."""
    return reference_path(scene, s, t, h).total_weight


def resolution_allowance(scene: Scene, h: float, reference: float) -> float:
    """Relative slack ``5 h sum(R) / reference`` granted to the grid's own error."""
    if reference <= 0.0:
        return math.inf
    return 5.0 * h * math.fsum(d.r for d in scene.disks) / reference


@dataclass
class Comparison:
    epsilon: float
    h: float
    graph_weight: float
    reference: float
    delta_h: float
    path: WeightedPath
    reference_path: WeightedPath
    node_count: int

    @property
    def ratio(self) -> float:
        if self.reference == 0.0:
            return 1.0 if self.graph_weight == 0.0 else math.inf
        return self.graph_weight / self.reference

    @property
    def bound(self) -> float:
        return (1.0 + self.epsilon) * (1.0 + self.delta_h)

    @property
    def ok(self) -> bool:
        return self.ratio <= self.bound


def compare(scene: Scene, s, t, epsilon: float, h: float | None = None) -> Comparison:
    """Route in the discretization graph and on the grid, with the allowed bound."""
    if h is None:
        h = epsilon / 100.0
    if h > epsilon / 100.0 * (1.0 + 1e-12):
        raise ValueError("grid spacing must be at most epsilon / 100")
    path, g = route(scene, s, t, epsilon, build_steiner_set(scene, epsilon))
    ref = reference_path(scene, s, t, h)
    delta = resolution_allowance(scene, h, ref.total_weight)
    return Comparison(epsilon, h, path.total_weight, ref.total_weight, delta, path, ref, len(g))


def approximation_ratio(scene: Scene, s, t, epsilon: float, h: float | None = None) -> float:
    return compare(scene, s, t, epsilon, h).ratio
