import numpy as np
import pytest

from conftest import dense_instance, disk
from largest_disk.arcs import apply_rule, find_crossings, right_arc
from largest_disk.errors import ValidationError
from largest_disk.geom import THIRD_TURN
from largest_disk.naive_builder import build_naive


def test_empty_and_single():
    assert len(build_naive([])) == 0
    d = disk(3, 1.0, 2.0, 4.0)
    m = build_naive([d])
    assert m.arc_of(3) == right_arc(d)


def test_small_disk_deep_inside_right_sector_vanishes():
    big, small = disk(0, 0.0, 0.0, 10.0), disk(1, 5.0, 0.3, 1.0)
    m = build_naive([big, small])
    assert len(m) == 1
    assert m.arc_of(0) == right_arc(big)


def test_small_disk_left_of_sector_survives():
    big, small = disk(0, 0.0, 0.0, 10.0), disk(1, -3.0, 0.3, 1.0)
    m = build_naive([big, small])
    assert (m.arc_of(1).theta_lo, m.arc_of(1).theta_hi) == (-THIRD_TURN, THIRD_TURN)


def test_largest_arc_is_never_trimmed():
    disks = dense_instance(40, 2)
    largest = max(disks, key=lambda d: d.radius)
    assert build_naive(disks).arc_of(largest.id) == right_arc(largest)


def test_rejects_radius_tie():
    with pytest.raises(ValidationError):
        build_naive([disk(0, 0.0, 0.0, 1.0), disk(1, 5.0, 1.0, 1.0)])


@pytest.mark.parametrize("seed", range(5))
def test_map_has_no_crossings(seed):
    m = build_naive(dense_instance(60, seed))
    assert find_crossings(m) == []


@pytest.mark.parametrize("seed", range(3))
def test_fold_order_does_not_matter(seed):
    disks = dense_instance(40, seed)
    m = build_naive(disks)
    rng = np.random.default_rng(seed)
    for d in disks:
        larger = [e for e in disks if e.radius > d.radius]
        a = right_arc(d)
        for k in rng.permutation(len(larger)):
            a = apply_rule(a, d, larger[int(k)])
        kept = m.arc_of(d.id)
        if a.is_empty:
            assert kept is None
        else:
            assert kept is not None
            assert (kept.theta_lo, kept.theta_hi) == pytest.approx((a.theta_lo, a.theta_hi), abs=1e-12)
