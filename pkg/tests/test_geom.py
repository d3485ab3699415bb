import math

import numpy as np
import pytest

from conftest import disk
from largest_disk.arcs import Sector
from largest_disk.errors import DegenerateInput
from largest_disk.geom import (
    circle_circle_intersections,
    dist_x_to_region,
    general_position_violations,
    point_in_disk,
    rotate_disk,
    rotate_point,
)
from largest_disk.models import Point


def test_point_in_disk():
    d = disk(0, 0.0, 0.0, 1.0)
    assert point_in_disk(Point(x=0.5, y=0.5), d)
    assert not point_in_disk(Point(x=1.0, y=1.0), d)
    assert point_in_disk(Point(x=1.0, y=0.0), d)
    assert point_in_disk(Point(x=0.0, y=0.0), d)
    assert not point_in_disk(Point(x=2.0, y=0.0), d)
    # |q| = 0.8485 < 1
    assert point_in_disk(Point(x=0.6, y=0.6), d)


def test_circle_intersections_two_points():
    points = circle_circle_intersections(disk(0, 0.0, 0.0, 1.0), disk(1, 1.0, 0.0, 1.0))
    ys = sorted(c.point.y for c in points)
    assert len(points) == 2
    assert all(abs(c.point.x - 0.5) < 1e-12 for c in points)
    assert ys[0] == pytest.approx(-math.sqrt(3) / 2)
    assert ys[1] == pytest.approx(math.sqrt(3) / 2)


@pytest.mark.parametrize("other", [disk(1, 5.0, 0.0, 1.0), disk(1, 0.1, 0.0, 3.0)])
def test_circle_intersections_none(other):
    assert circle_circle_intersections(disk(0, 0.0, 0.0, 1.0), other) == []


def test_circle_intersections_tangent_flagged():
    points = circle_circle_intersections(disk(0, 0.0, 0.0, 1.0), disk(1, 3.0, 0.0, 2.0))
    assert len(points) == 1
    assert points[0].tangent


def test_coincident_circles_rejected():
    with pytest.raises(DegenerateInput):
        circle_circle_intersections(disk(0, 1.0, 1.0, 2.0), disk(1, 1.0, 1.0, 2.0))


def test_rotate_point():
    q = rotate_point(Point(x=1.0, y=1.0), 2 * math.pi / 3)
    assert q.x == pytest.approx(-1.3660254)
    assert q.y == pytest.approx(0.3660254)
    back = rotate_point(q, -2 * math.pi / 3)
    assert back.x == pytest.approx(1.0) and back.y == pytest.approx(1.0)


def test_rotation_preserves_distances():
    rng = np.random.default_rng(21)
    for _ in range(500):
        ax, ay, bx, by = (float(v) for v in rng.uniform(-1e3, 1e3, 4))
        theta = float(rng.uniform(-math.pi, math.pi))
        a, b = rotate_point(Point(x=ax, y=ay), theta), rotate_point(Point(x=bx, y=by), theta)
        assert math.hypot(a.x - b.x, a.y - b.y) == pytest.approx(math.hypot(ax - bx, ay - by), rel=1e-12, abs=1e-9)
        assert math.hypot(a.x, a.y) == pytest.approx(math.hypot(ax, ay), rel=1e-12, abs=1e-9)


def test_circle_intersections_lie_on_both_circles(tol):
    rng = np.random.default_rng(22)
    found = 0
    for _ in range(1000):
        x1, y1, x2, y2 = (float(v) for v in rng.uniform(-100.0, 100.0, 4))
        r1, r2 = (float(v) for v in rng.uniform(1.0, 120.0, 2))
        d, e = disk(0, x1, y1, r1), disk(1, x2, y2, r2)
        for c in circle_circle_intersections(d, e, tol):
            for owner in (d, e):
                assert abs(math.hypot(c.point.x - owner.cx, c.point.y - owner.cy) - owner.radius) <= 10 * tol.eps_g
            found += 1
    assert found > 200


def test_rotate_disk_keeps_id_and_radius():
    d = rotate_disk(disk(7, 2.0, 0.0, 3.0), math.pi / 2)
    assert d.id == 7 and d.radius == 3.0
    assert d.cx == pytest.approx(0.0, abs=1e-12) and d.cy == pytest.approx(2.0)


def test_dist_x_to_sector():
    s = Sector(disk=disk(0, 0.0, 0.0, 1.0))
    assert dist_x_to_region(Point(x=-2.0, y=0.0), s) == pytest.approx(2.0)
    assert dist_x_to_region(Point(x=5.0, y=0.0), s) == math.inf
    assert dist_x_to_region(Point(x=0.5, y=0.0), s) == 0.0
    assert dist_x_to_region(Point(x=0.0, y=0.95), s) == math.inf


def test_general_position_violations(tol):
    assert general_position_violations([disk(0, 0.0, 0.0, 1.0), disk(1, 3.0, 1.0, 2.0)], tol) == []
    ties = general_position_violations([disk(0, 0.0, 0.0, 1.0), disk(1, 3.0, 1.0, 1.0)], tol)
    assert any("radius tie" in v for v in ties)
    ties = general_position_violations([disk(0, 0.0, 2.0, 1.0), disk(1, 3.0, 2.0, 2.0)], tol)
    assert any("y tie (frame 0)" in v for v in ties)
