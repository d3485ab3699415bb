import numpy as np
import pytest

from conftest import dense_instance, disk, in_any_sector
from largest_disk.arcs import Arc, ArcMap, intersect_arcs, right_arc, rule_interval, sector_of
from largest_disk.config import default_tolerance, get_settings
from largest_disk.dc_builder import (
    TrimTask,
    YTree,
    assign_buckets,
    build_dc,
    highest_escape_subarcs,
    lowest_escape_subarcs,
    merge_maps,
)
from largest_disk.geom import THIRD_TURN, on_circle
from largest_disk.homothet_union import SectorUnion, union_of_sectors
from largest_disk.models import MergeStats, Side
from largest_disk.naive_builder import build_naive


def task(d):
    return TrimTask(disk=d, arc_minus=right_arc(d), running=right_arc(d))


def leaves(n=16):
    return [disk(i, 3.0 * i - 0.01 * i * i, float(i), 100.0 + i) for i in range(n)]


def flatten(tree, nodes):
    return sorted(d.id for node in nodes for d in tree.disks_of(node))


# ============================================================================
# Tree and buckets
# ============================================================================

def test_cover_extremes():
    tree = YTree(leaves())
    assert tree.cover(100.0, Side.ABOVE) == []
    assert tree.cover(-100.0, Side.ABOVE) == [(tree.height, 0)]
    assert tree.cover(-100.0, Side.BELOW) == []


@pytest.mark.parametrize("rank", range(16))
def test_cover_flattens_to_filtered_leaves(rank):
    tree = YTree(leaves())
    y = rank + 0.5
    assert flatten(tree, tree.cover(y, Side.ABOVE)) == list(range(rank + 1, 16))
    assert flatten(tree, tree.cover(y, Side.BELOW)) == list(range(0, rank + 1))


@pytest.mark.parametrize("n", [1, 5, 13])
def test_levels_partition_the_cover(n):
    tree = YTree(leaves(n))
    for y in np.linspace(-1.0, n, 9):
        for side in Side:
            by_level = [node for level in range(tree.height + 1) for node in tree.cover(y, side, level)]
            assert sorted(by_level) == sorted(tree.cover(y, side))


def test_assign_buckets():
    tree = YTree(leaves())
    tasks = [task(disk(100, 0.0, 7.5, 1.0)), task(disk(101, 1.0, -3.0, 0.5))]
    buckets = assign_buckets(tree, tasks, Side.ABOVE)
    covered = {t.disk.id: [] for t in tasks}
    for node, bucket in buckets.items():
        for t in bucket:
            covered[t.disk.id].append(node)
    assert flatten(tree, covered[100]) == list(range(8, 16))
    assert covered[101] == [(tree.height, 0)]


# ============================================================================
# Escape subarcs
# ============================================================================

def sampled_component(d, disks, lowest=True, n=4000):
    thetas = np.linspace(-THIRD_TURN, THIRD_TURN, n)
    if not lowest:
        thetas = thetas[::-1]
    outside = [not in_any_sector(disks, *on_circle(d.cx, d.cy, d.radius, float(t))) for t in thetas]
    if True not in outside:
        return None
    i = j = outside.index(True)
    while j + 1 < n and outside[j + 1]:
        j += 1
    lo, hi = sorted((float(thetas[i]), float(thetas[j])))
    return lo, hi


def test_escape_with_empty_union_keeps_arcs():
    arcs = [right_arc(d) for d in dense_instance(5, 0)]
    assert lowest_escape_subarcs(arcs, SectorUnion()) == arcs
    assert highest_escape_subarcs(arcs, SectorUnion()) == arcs


def test_arc_swallowed_by_union_is_empty():
    small = disk(0, 5.0, 0.3, 1.0)
    u = union_of_sectors([sector_of(disk(1, 0.0, 1.0, 10.0))])
    assert lowest_escape_subarcs([right_arc(small)], u)[0].is_empty
    assert highest_escape_subarcs([right_arc(small)], u)[0].is_empty


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("lowest", [True, False])
def test_escape_matches_sampling(seed, lowest):
    disks = sorted(dense_instance(64, seed), key=lambda d: d.radius)
    small, large = disks[:32], disks[32:]
    u = union_of_sectors([sector_of(d) for d in large])
    escape = lowest_escape_subarcs if lowest else highest_escape_subarcs
    step = 2 * THIRD_TURN / 3999
    for d, got in zip(small, escape([right_arc(d) for d in small], u)):
        want = sampled_component(d, large, lowest)
        if want is None:
            assert got.is_empty or got.theta_hi - got.theta_lo < 2 * step
        elif got.is_empty:
            assert want[1] - want[0] < 2 * step
        else:
            assert got.theta_lo == pytest.approx(want[0], abs=2 * step)
            assert got.theta_hi == pytest.approx(want[1], abs=2 * step)


def fold(d, bigs, tol):
    lo, hi = -THIRD_TURN, THIRD_TURN
    for big in bigs:
        rlo, rhi = rule_interval(d, big, tol)
        lo, hi = max(lo, rlo), min(hi, rhi)
    return Arc.span(d, lo, hi)


def same_arc(a, b, eps=1e-7):
    a_void = a.is_empty or a.theta_hi - a.theta_lo < eps
    b_void = b.is_empty or b.theta_hi - b.theta_lo < eps
    if a_void or b_void:
        return a_void and b_void
    return abs(a.theta_lo - b.theta_lo) <= eps and abs(a.theta_hi - b.theta_hi) <= eps


@pytest.mark.parametrize("seed", range(3))
def test_rule_fold_is_escape_component(seed):
    # Trimming by every larger disk above d leaves the lowest component of
    # the arc outside their union; below, the highest.
    tol = default_tolerance()
    disks = dense_instance(24, seed)
    for d in disks:
        larger = [e for e in disks if e.radius > d.radius]
        for side, escape in ((Side.ABOVE, lowest_escape_subarcs), (Side.BELOW, highest_escape_subarcs)):
            group = [e for e in larger if (e.cy > d.cy) == (side == Side.ABOVE)]
            u = union_of_sectors([sector_of(e) for e in group])
            assert same_arc(escape([right_arc(d)], u)[0], fold(d, group, tol))


@pytest.mark.parametrize("seed", range(3))
def test_decomposable_over_partitions(seed):
    tol = default_tolerance()
    rng = np.random.default_rng(seed)
    disks = dense_instance(30, 10 + seed)
    reference = build_naive(disks)
    for d in disks:
        larger = [e for e in disks if e.radius > d.radius]
        labels = rng.integers(0, 3, len(larger))
        running = right_arc(d)
        for part in range(3):
            members = [e for e, k in zip(larger, labels) if k == part]
            above = union_of_sectors([sector_of(e) for e in members if e.cy > d.cy])
            below = union_of_sectors([sector_of(e) for e in members if e.cy < d.cy])
            running = intersect_arcs(running, lowest_escape_subarcs([right_arc(d)], above)[0], tol)
            running = intersect_arcs(running, highest_escape_subarcs([right_arc(d)], below)[0], tol)
        expected = reference.arc_of(d.id) or Arc.empty(d)
        assert same_arc(running, expected)


# ============================================================================
# Merge and build
# ============================================================================

def test_merge_with_far_away_larger_disks_keeps_arcs():
    small = [disk(0, 0.0, 0.0, 1.0), disk(1, 0.5, 3.0, 1.2)]
    m_minus = build_naive(small)
    merged = merge_maps(m_minus, [disk(2, 100.0, 50.0, 5.0), disk(3, 80.0, -40.0, 6.0)])
    assert merged.differences(m_minus) == []


def test_merge_drops_swallowed_arc():
    m_minus = build_naive([disk(0, 5.0, 0.3, 1.0)])
    merged = merge_maps(m_minus, [disk(1, 0.0, 1.0, 10.0)])
    assert len(merged) == 0


def test_merge_carries_larger_map():
    plus = [disk(1, 0.0, 1.0, 10.0), disk(2, 30.0, -2.0, 12.0)]
    m_plus = build_naive(plus)
    merged = merge_maps(build_naive([disk(0, 5.0, 0.3, 1.0)]), plus, m_plus=m_plus)
    assert merged.differences(m_plus) == []


@pytest.mark.parametrize("n", [1, 2, 3, 5, 16, 64, 128])
@pytest.mark.parametrize("seed", range(3))
def test_dc_matches_naive(n, seed):
    disks = dense_instance(n, seed)
    assert build_dc(disks).differences(build_naive(disks), angle_tol=1e-7) == []


def test_merge_matches_naive_on_union():
    disks = sorted(dense_instance(96, 7), key=lambda d: d.radius, reverse=True)
    plus, minus = disks[:48], disks[48:]
    merged = merge_maps(build_naive(minus), plus, m_plus=build_naive(plus))
    assert merged.differences(build_naive(disks), angle_tol=1e-7) == []


def test_work_is_n_log_n():
    stats: list[MergeStats] = []
    build_dc(dense_instance(256, 1), stats=stats)
    assert stats
    for m in stats:
        size = m.n_plus + m.n_minus
        assert m.work <= 4 * size * np.log2(size)
        assert m.max_union_edges <= get_settings().union_edge_bound * max(m.n_plus, 1)


def test_empty_map_merge():
    merged = merge_maps(ArcMap(), [disk(0, 0.0, 0.0, 1.0)])
    assert len(merged) == 0
