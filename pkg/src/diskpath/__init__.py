"""Approximate weighted shortest paths amid disjoint weighted disks."""

from .discretize import SteinerNode, SteinerSet, build_steiner_set, predicted_counts
from .geometry import Disk, Point
from .obstacle import TerminalInsideObstacle, exact_path, single_disk_optimum
from .pathgraph import EdgeClass, PathGraph, Unreachable, audit_path, build_graph, edge_weight, route
from .paths import Piece, WeightedPath
from .oracle import approximation_ratio, compare
from .scene import QueryPoints, Scene, SceneError, load_scene, loads_scene, save_scene, validate
from .spanner import YaoGraph, build_yao, spanner_bound, spanning_audit

__all__ = [
    "Disk", "EdgeClass", "PathGraph", "Piece", "Point", "QueryPoints", "Scene", "SceneError",
    "SteinerNode", "SteinerSet", "TerminalInsideObstacle", "Unreachable", "WeightedPath", "YaoGraph",
    "approximation_ratio", "audit_path", "build_graph", "build_steiner_set", "build_yao", "compare",
    "edge_weight", "exact_path", "load_scene", "loads_scene", "predicted_counts", "route", "save_scene",
    "single_disk_optimum", "spanner_bound", "spanning_audit", "validate",
]
