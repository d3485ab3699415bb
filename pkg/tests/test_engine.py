import math

import numpy as np
import pytest

from conftest import dense_instance, disk
from largest_disk.arcs import find_crossings, right_arc
from largest_disk.config import get_settings
from largest_disk.engine import (
    explain,
    frame_disks,
    oracle_query,
    preprocess,
    query,
    validate,
)
from largest_disk.errors import ValidationError
from largest_disk.geom import rotate_point
from largest_disk.instances import generate_instance, sample_probes
from largest_disk.locator import build_locator, scan_first_arc_right
from largest_disk.models import Frame, Point
from largest_disk.naive_builder import build_naive


Q1 = Point(x=5.0, y=0.2)
Q2 = Point(x=-5.0, y=0.3)


def test_empty_structure():
    s = preprocess([])
    assert query(s, Point(x=0.0, y=0.0)).disk_id is None
    assert all(len(s.map_of(f)) == 0 for f in Frame)


def test_single_disk_has_one_arc_per_frame():
    d = disk(9, 1.0, 1.0, 2.0)
    s = preprocess([d])
    for frame in Frame:
        assert len(s.map_of(frame)) == 1
    assert s.query(Point(x=1.5, y=1.2)).disk_id == 9
    assert s.query(Point(x=-0.5, y=1.3)).disk_id == 9
    assert s.query(Point(x=10.0, y=1.0)).disk_id is None


def test_five_disk_map_shape(five_disks):
    assert validate(five_disks).ok
    s = preprocess(five_disks)
    m = s.map_of(Frame.RIGHT)
    assert m.arc_of(1) == right_arc(five_disks[0])
    assert m.arc_of(3) is None
    assert m.arc_of(2) is not None
    for frame in Frame:
        assert find_crossings(s.map_of(frame)) == []


def test_five_disk_right_map_alone(five_disks):
    arcs = preprocess(five_disks).map_of(Frame.RIGHT).sorted_arcs()
    by_id = {d.id: d for d in five_disks}
    assert scan_first_arc_right(arcs, Q1) == 1
    hit = scan_first_arc_right(arcs, Q2)
    assert hit == 2
    assert math.hypot(Q2.x - by_id[hit].cx, Q2.y - by_id[hit].cy) > by_id[hit].radius


def test_five_disk_three_frame_query(five_disks):
    s = preprocess(five_disks)
    assert s.query(Q1).disk_id == 1
    answer = s.query(Q2)
    assert answer.disk_id == 1 == oracle_query(five_disks, Q2).disk_id
    assert answer.candidates[Frame.RIGHT] == 2
    assert answer.candidates[Frame.TOP] == 1
    hits = {h.frame: h for h in explain(s, Q2)}
    assert not hits[Frame.RIGHT].contains and hits[Frame.TOP].contains


def test_query_inside_only_largest():
    big, small = disk(0, 0.0, 0.0, 10.0), disk(1, 30.0, 1.0, 1.0)
    s = preprocess([big, small])
    for angle in np.linspace(-math.pi, math.pi, 13)[:-1] + 0.1:
        q = Point(x=5.0 * math.cos(angle), y=5.0 * math.sin(angle))
        assert s.query(q).disk_id == 0


@pytest.mark.parametrize("builder", ["dc", "naive"])
@pytest.mark.parametrize("n", [2, 5, 16, 128])
def test_matches_oracle(builder, n):
    for seed in range(3):
        disks = dense_instance(n, seed)
        s = preprocess(disks, builder=builder)
        for q in sample_probes(disks, 1500, seed):
            answer = s.query(q)
            expected = oracle_query(disks, q)
            assert answer.disk_id == expected.disk_id
            if expected.disk_id is not None:
                assert expected.disk_id in answer.candidates.values()


def test_sparse_instance_matches_oracle():
    disks = generate_instance(1000, 4)
    s = preprocess(disks)
    for q in sample_probes(disks, 3000, 4):
        assert s.query(q).disk_id == oracle_query(disks, q).disk_id


def test_rotated_frame_is_right_frame_of_rotated_instance():
    disks = dense_instance(40, 6)
    s = preprocess(disks)
    for frame in (Frame.TOP, Frame.BOTTOM):
        loc = build_locator(build_naive(frame_disks(disks, frame)))
        for q in sample_probes(disks, 500, 1):
            local = rotate_point(q, -frame.angle)
            assert s.locator_of(frame).probe(local)[0] == loc.probe(local)[0]


def test_oracle_query():
    assert oracle_query([], Point(x=0.0, y=0.0)).disk_id is None
    nested = [disk(0, 0.0, 0.0, 1.0), disk(1, 0.2, 0.1, 3.0)]
    assert oracle_query(nested, Point(x=0.1, y=0.0)).disk_id == 1
    assert oracle_query(nested, Point(x=2.5, y=0.0)).disk_id == 1
    assert oracle_query(nested[:1], Point(x=0.5, y=0.0)).disk_id == 0


def test_validate_reports_violations():
    report = validate([disk(0, 0.0, 0.0, 1.0), disk(1, 5.0, 0.0, 1.0)])
    assert not report.ok
    assert any("radius tie" in v for v in report.violations)
    assert any("y tie (frame 0)" in v for v in report.violations)
    assert validate(generate_instance(1000, 0)).ok


def test_preprocess_rejects_bad_instance():
    with pytest.raises(ValidationError):
        preprocess([disk(0, 0.0, 0.0, 1.0), disk(1, 5.0, 0.0, 1.0)])
    with pytest.raises(ValueError):
        preprocess([], builder="quadratic")


def test_build_stats():
    s = preprocess(dense_instance(64, 2))
    assert s.stats.builder == "dc" and s.stats.n == 64
    assert set(s.stats.arcs) == set(Frame)
    assert s.stats.merges
    assert s.stats.work_ratio() <= 4
    for frame in Frame:
        assert s.stats.locator_entries[frame] <= get_settings().locator_entry_bound * max(s.stats.arcs[frame], 1)
