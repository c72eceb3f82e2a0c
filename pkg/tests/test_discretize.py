import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskpath.discretize import (
    RING_POINT,
    VICINITY_CENTER,
    build_steiner_set,
    cumulative_inscribed,
    node_constant,
    predicted_counts,
    ring_count,
    ring_points,
    uniform_nodes,
    vicinity_bound,
    vicinity_centers,
    zero_weight_gap,
)
from diskpath.geometry import Disk, angular_distance
from diskpath.scene import Scene


def pair_scene(R=1.0, d=1.0, w=1.0):
    return Scene.from_disks([Disk(0, 0.0, 0.0, R, w), Disk(1, 2 * R + d, 0.0, R, w)])


def test_six_centers_for_unit_weight():
    sc = Scene.from_disks([Disk(0, 0, 0, 1, 1.0)])
    assert len(vicinity_centers(sc, 0, 0.5)) == 6


def test_zero_weight_gap_and_count():
    sc = pair_scene(1.0, math.pi / 2, 0.0)
    # make a = 2 + sqrt(5) with clearance 1: use the constants directly
    sc = Scene(sc.disks, sc.tol, (1.0, 1.0), sc.alpha, 1.0, 2 + math.sqrt(5))
    assert zero_weight_gap(sc, 0, 1.0) == pytest.approx(0.11803, abs=1e-5)
    assert len(vicinity_centers(sc, 0, 1.0)) == 54


def test_zero_weight_wrap_gap_not_larger_than_step():
    sc = pair_scene(1.0, 1.0, 0.0)
    for eps in (1.0, 0.5, 0.3, 0.25):
        c = vicinity_centers(sc, 0, eps)
        gap = zero_weight_gap(sc, 0, eps)
        wrap = 2 * math.pi - c[-1]
        assert 0.0 < wrap <= gap + 1e-15


@given(st.floats(0.3, 2.0), st.floats(0.3, 3.0), st.sampled_from([0.2, 0.5, 1.0, 1.3, math.pi / 2, 9.0]))
@settings(max_examples=40, deadline=None)
def test_positive_weight_has_at_least_six_centers(R, d, w):
    assert len(vicinity_centers(pair_scene(R, d, w), 0, 0.5)) >= 6


def test_cumulative_closed_form_matches_running_sum():
    w, eps, a = 0.7, 0.4, 5.0
    q = 1 - 2 * w * eps / (a * math.pi)
    running = 0.0
    for ell in range(1, 200):
        running += (w * eps / a) * q ** (ell - 1)
        assert cumulative_inscribed(ell, w, eps, a) == pytest.approx(running, rel=1e-12)


def test_first_gap():
    w, eps, a = 1.2, 0.5, 3.0
    assert float(cumulative_inscribed(1, w, eps, a)) == pytest.approx(w * eps / a, rel=1e-14)


def test_ring_count_is_largest_within_limit():
    w, eps = 1.0, 0.5
    sc = pair_scene(1.0, 1.0, w)
    al = sc.alpha[0]
    r = ring_count(al, w, eps, sc.a)
    assert cumulative_inscribed(r, w, eps, sc.a) <= math.pi / 2 - al
    assert cumulative_inscribed(r + 1, w, eps, sc.a) > math.pi / 2 - al


@given(st.floats(0.5, 2.0), st.floats(0.3, 3.0), st.sampled_from([0.3, 1.0, 1.4, math.pi / 2]),
       st.sampled_from([1.0, 0.5, 0.25]))
@settings(max_examples=30, deadline=None)
def test_ring_points_lie_in_annulus(R, d, w, eps):
    sc = pair_scene(R, d, w)
    al = sc.alpha[0]
    centers = vicinity_centers(sc, 0, eps)
    tol = 1e-9
    for j in (0, len(centers) - 1):
        c = sc.disks[0].point_at(centers[j])
        for p in ring_points(sc, 0, eps, j):
            chord = math.dist(c, sc.disks[0].point_at(p.angle))
            assert 2 * R * math.sin(al) - tol <= chord <= 2 * R * math.sin(2 * al) + tol


def test_zero_weight_disk_has_centers_only():
    st_ = build_steiner_set(pair_scene(1.0, 1.0, 0.0), 0.5)
    assert {n.kind for n in st_.nodes} == {VICINITY_CENTER}


def test_nodes_sorted_and_distinct_per_disk():
    sc = pair_scene(1.0, 1.0, 1.0)
    s = build_steiner_set(sc, 0.5)
    for i in range(sc.n):
        ang = [n.angle for n in s.on_disk(i)]
        assert ang == sorted(ang)
        gaps = np.diff(ang + [ang[0] + 2 * math.pi])
        assert gaps.min() > sc.tol


def test_count_monotone_in_epsilon():
    sc = pair_scene(1.0, 1.0, 1.0)
    counts = [len(build_steiner_set(sc, e)) for e in (1.0, 0.5, 0.25, 0.125)]
    assert counts == sorted(counts)


def test_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        build_steiner_set(pair_scene(), 0.0)
    with pytest.raises(ValueError):
        build_steiner_set(pair_scene(), 1.5)


def test_vicinity_bound_example():
    sc = pair_scene(1.0, 1.0, 1.0)
    al = sc.alpha[0]
    b = vicinity_bound(al, 1.0, 0.5, sc.a)
    kept = len(ring_points(sc, 0, 0.5, 0))
    assert kept <= b
    assert math.isfinite(b) and b > 1


def test_bounds_grow_as_epsilon_shrinks():
    sc = pair_scene(1.0, 1.0, 1.0)
    vals = [predicted_counts(sc, e)["total_bound"] for e in (1.0, 0.5, 0.1, 0.01)]
    assert vals == sorted(vals)


def test_total_node_bound_holds():
    sc = pair_scene(1.0, 0.5, 0.3)
    for eps in (1.0, 0.5, 0.25):
        assert len(build_steiner_set(sc, eps)) <= node_constant(sc) * sc.n / eps


def test_uniform_nodes_phase_zero():
    sc = pair_scene()
    nodes = uniform_nodes(sc, 0.1)
    per = int(math.ceil(2 * math.pi / 0.1))
    assert len(nodes) == 2 * per
    assert nodes[0].angle == 0.0 and nodes[per].angle == 0.0


def test_centers_kept_over_coincident_ring_points():
    sc = pair_scene(1.0, 1.0, 1.0)
    s = build_steiner_set(sc, 1.0)
    centers = vicinity_centers(sc, 0, 1.0)
    kept = {round(n.angle, 9) for n in s.on_disk(0) if n.kind == VICINITY_CENTER}
    assert len(kept) == len(centers)
    for n in s.on_disk(0):
        if n.kind == RING_POINT:
            assert min(angular_distance(n.angle, c) for c in centers) > sc.tol
