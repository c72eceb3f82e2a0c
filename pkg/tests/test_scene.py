import math

import pytest

from diskpath.geometry import Disk
from diskpath.scene import (
    NegativeWeight,
    NonPositiveRadius,
    OverlapError,
    Scene,
    SceneError,
    SceneParseError,
    constant_a,
    dumps_scene,
    load_scene,
    loads_scene,
    save_scene,
    weighted_angular_radius,
)


def two(x2, w=1.0):
    return [Disk(0, 0.0, 0.0, 1.0, w), Disk(1, x2, 0.0, 1.0, w)]


def test_clearance_two_disks():
    sc = Scene.from_disks(two(3.0))
    assert sc.clearance == pytest.approx((1.0, 1.0))


def test_touching_disks_overlap():
    with pytest.raises(OverlapError):
        Scene.from_disks(two(2.0))


def test_single_disk_uses_radius_as_clearance():
    sc = Scene.from_disks([Disk(0, 0.0, 0.0, 1.7, 1.0)])
    assert sc.clearance == (1.7,)
    assert sc.alpha[0] == pytest.approx(math.asin(1 / 4))


@pytest.mark.parametrize("disk,exc", [(Disk(0, 0, 0, 0.0, 1.0), NonPositiveRadius),
                                       (Disk(0, 0, 0, -1.0, 1.0), NonPositiveRadius),
                                       (Disk(0, 0, 0, 1.0, -0.5), NegativeWeight),
                                       (Disk(0, 0, 0, 1.0, math.nan), NegativeWeight)])
def test_bad_disks(disk, exc):
    with pytest.raises(exc):
        Scene.from_disks([disk])


class TestAngularRadius:
    def test_unit_weight(self):
        assert weighted_angular_radius(1, 1, 1) == pytest.approx(0.25268, abs=1e-5)

    def test_clamped_weight(self):
        assert weighted_angular_radius(1, 1, math.pi / 2) == pytest.approx(math.asin(1 / (2 * math.pi)))
        assert weighted_angular_radius(1, 1, 50.0) == weighted_angular_radius(1, 1, math.pi / 2)

    def test_clearance_limited(self):
        assert weighted_angular_radius(2, 1, 1) == pytest.approx(math.asin(1 / 8))

    def test_zero_weight_undefined(self):
        with pytest.raises(ValueError):
            weighted_angular_radius(1, 1, 0.0)


class TestConstantA:
    def test_c_equals_one(self):
        assert constant_a(1.0) == pytest.approx(2 + math.sqrt(5))

    def test_small_c(self):
        assert 1.0 < constant_a(1e-6) < 1.00001

    def test_c_from_scene(self):
        # max R = 1 and min clearance pi/2 give c = 1
        sc = Scene.from_disks(two(2.0 + math.pi / 2))
        assert sc.c == pytest.approx(1.0)
        assert sc.a == pytest.approx(2 + math.sqrt(5))


class TestFiles:
    def test_minimal(self):
        sc = loads_scene('{"disks": [{"cx": 0, "cy": 0, "r": 1, "w": 0.5}]}')
        assert sc.n == 1 and sc.disks[0].w == 0.5

    def test_overlap_in_file(self):
        with pytest.raises(OverlapError):
            loads_scene('{"disks": [{"cx": 0, "cy": 0, "r": 1, "w": 1}, {"cx": 1, "cy": 0, "r": 1, "w": 1}]}')

    def test_round_trip(self, tmp_path):
        sc = Scene.from_disks([Disk(0, 0.1, -1 / 3, 0.7, math.inf), Disk(5, 4.2, math.pi, 1 / 7, 0.3)])
        f = tmp_path / "s.json"
        save_scene(sc, f)
        back = load_scene(f)
        assert back.disks == sc.disks
        assert dumps_scene(back) == dumps_scene(sc)

    def test_syntax_error_location(self):
        with pytest.raises(SceneParseError, match="line 2"):
            loads_scene('{"disks": [\n  {"cx": }]}')

    def test_field_error_location(self):
        with pytest.raises(SceneParseError, match=r"disks\[0\]\.r"):
            loads_scene('{"disks": [{"cx": 0, "cy": 0, "r": "big", "w": 1}]}')

    def test_query_inside_obstacle(self):
        with pytest.raises(SceneError):
            loads_scene('{"disks": [{"cx": 0, "cy": 0, "r": 1, "w": "inf"}], "query": {"s": [0, 0], "t": [3, 0]}}')


def test_with_weights_keeps_geometry():
    sc = Scene.from_disks(two(3.0))
    sc2 = sc.with_weights([0.0, math.inf])
    assert [d.w for d in sc2.disks] == [0.0, math.inf]
    assert sc2.clearance == sc.clearance
