import math
import random

import numpy as np
import pytest
from conftest import free_point, scatter

from diskpath.discretize import TERMINAL, SteinerNode, build_steiner_set
from diskpath.geometry import Disk, Point
from diskpath.pathgraph import PathGraph, build_graph
from diskpath.scene import Scene
from diskpath.spanner import (
    YaoGraph,
    build_yao,
    complete_distances,
    cone_index,
    ratio_max,
    spanner_bound,
    spanning_audit,
)


class TestBound:
    def test_k4(self):
        assert spanner_bound(4) == pytest.approx(4.261973, abs=1e-6)

    def test_k6(self):
        # direct evaluation of 1 / (1 - 2 sin(pi/12)) = 2.0731...
        assert spanner_bound(6) == pytest.approx(1 / (1 - 2 * math.sin(math.pi / 12)), rel=1e-15)
        assert spanner_bound(6) == pytest.approx(2.073132, abs=1e-6)

    def test_decreasing(self):
        vals = [spanner_bound(k) for k in range(4, 20)]
        assert vals == sorted(vals, reverse=True)


class TestCones:
    def test_partition(self):
        k = 6
        d = np.linspace(0, 2 * math.pi, 10001)
        idx = cone_index(0.3, d, k)
        assert idx.min() == 0 and idx.max() == 2 * k - 1
        assert len(np.unique(idx)) == 2 * k

    def test_first_ray_inclusive_and_clockwise(self):
        k = 4
        theta = math.pi / k
        frame = 1.0
        got = cone_index(frame, np.array([frame, frame - 0.5 * theta, frame - theta, frame + 0.1]), k)
        assert list(got) == [0, 0, 1, 2 * k - 1]


def two_nodes():
    sc = Scene.from_disks([Disk(0, 0, 0, 1, 1.0), Disk(1, 5, 0, 1, 1.0)])
    return sc, [SteinerNode(0, 0.0, TERMINAL), SteinerNode(1, math.pi, TERMINAL)]


class TestBuild:
    def test_two_visible_nodes_one_edge(self):
        sc, nodes = two_nodes()
        y = build_yao(sc, nodes, 4)
        assert list(y.edges) == [(0, 1)]
        assert y.edges[(0, 1)][1] == pytest.approx(3.0)

    def test_empty_cones_skipped(self):
        sc, nodes = two_nodes()
        y = build_yao(sc, nodes, 4)
        assert all(len(c) <= 1 for c in y.choices)

    def test_k_below_four(self):
        sc, nodes = two_nodes()
        with pytest.raises(ValueError):
            build_yao(sc, nodes, 3)

    def test_selection_counts(self):
        rng = random.Random(2)
        sc = scatter(rng, 3, [0.3, 1.0, math.pi / 2])
        steiner = build_steiner_set(sc, 0.5)
        for k in (4, 6, 8):
            y = build_yao(sc, steiner, k)
            V = y.n_nodes
            assert all(len(c) <= 2 * k for c in y.choices)
            assert all(len({cone for cone, _ in c}) == len(c) for c in y.choices)
            assert len(y.edges) <= 2 * k * V
            assert len(y.edges) < V * (V - 1) // 2

    def test_picks_nearest_disk_then_nearest_node(self):
        # from a free terminal at the origin, cone 0 (frame +x, clockwise) sees disk 0 first
        sc = Scene.from_disks([Disk(0, 3, -0.5, 0.5, 1.0), Disk(1, 8, -0.5, 0.5, 1.0)])
        nodes = [SteinerNode(-1, math.nan, TERMINAL, point=Point(0.0, 0.0))]
        nodes += [SteinerNode(0, a, TERMINAL) for a in (math.pi * 0.75, math.pi, math.pi * 1.25)]
        nodes += [SteinerNode(1, a, TERMINAL) for a in (math.pi * 0.75, math.pi, math.pi * 1.25)]
        y = build_yao(sc, nodes, 4)
        picks = dict(y.choices[0])
        assert picks[0] in (1, 2, 3)
        g = PathGraph(sc, nodes)
        best = min((1, 2, 3), key=lambda v: g.position(0).dist(g.position(v)) if cone_index(
            0.0, np.array([math.atan2(g.position(v).y, g.position(v).x)]), 4)[0] == 0 else math.inf)
        assert picks[0] == best

    def test_yao_edges_are_visible_kinds(self):
        rng = random.Random(4)
        sc = scatter(rng, 3, [0.3, 1.0, math.inf])
        y = build_yao(sc, build_steiner_set(sc, 0.5), 6)
        assert {c.value for c, _ in y.edges.values()} <= {"boundary_arc", "interior_chord", "free_segment"}


class TestAudit:
    def test_identical_graph_ratio_one(self):
        sc, nodes = two_nodes()
        g = PathGraph(sc, nodes + [SteinerNode(0, 1.0, TERMINAL)])
        full = YaoGraph(4, g, {(u, v): (c, w) for u, v, c, w in g.edges()})
        assert spanning_audit(full, g) == pytest.approx(1.0)

    def test_node_mismatch(self):
        sc, nodes = two_nodes()
        y = build_yao(sc, nodes, 4)
        with pytest.raises(ValueError):
            spanning_audit(y, PathGraph(sc, nodes[:1]))

    def test_ratio_max_handles_zero_pairs(self):
        dg = np.array([[0.0, 0.0], [0.0, 0.0]])
        assert ratio_max(dg.copy(), dg) == 1.0

    @pytest.mark.parametrize("seed", range(25))
    def test_bound_on_random_scenes(self, seed):
        rng = random.Random(300 + seed)
        sc = scatter(rng, rng.randint(1, 4), [0.0, 1.0, 1.4, math.pi / 2, math.inf])
        g = build_graph(sc, build_steiner_set(sc, 1.0))
        g.insert_terminal(free_point(rng, sc))
        dg = complete_distances(g)
        assert np.all(np.isfinite(dg))
        for k in (4, 6, 8):
            r = spanning_audit(build_yao(sc, g, k), g, dg)
            assert r <= spanner_bound(k) + 1e-9
            # a subgraph never undercuts the complete graph
            assert r >= 1.0 - 1e-12
