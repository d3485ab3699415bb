"""
Divide-and-conquer construction of a frame's planar map.

The disks are split by radius into a larger half D+ and a smaller half D-,
both maps are built recursively, and the smaller half's arcs are trimmed by
the larger half in `merge_maps`:

    A_d* = A_d^(above) & A_d^(below) & A_d^-

where A_d^(above) is the lowest component of A_d outside the union of the
sectors of D+ centered above d (A_d^(below) is the mirror image). Both are
decomposable over any partition of D+, so they are evaluated on the
canonical nodes of a balanced tree over D+ ordered by center y, one tree
level at a time, and intersected into each disk's running arc.
"""

import logging
from bisect import bisect_left, bisect_right

from pydantic import BaseModel

from largest_disk.arcs import Arc, ArcMap, intersect_arcs, right_arc, sector_of
from largest_disk.config import default_tolerance, get_settings
from largest_disk.geom import require_general_position
from largest_disk.homothet_union import Edge, SectorUnion, edge_crossings, merge_unions, point_in_union
from largest_disk.models import Disk, Frame, MergeStats, Side, Tolerance
from largest_disk.naive_builder import build_naive
from largest_disk.sweep import overlay_sweep

logger = logging.getLogger(__name__)

NodeKey = tuple[int, int]  # (level, index); level 0 holds the leaves


# ============================================================================
# Types
# ============================================================================

class YTree:
    """Balanced tree over disks sorted by center y, stored implicitly by level."""

    def __init__(self, disks: list[Disk]):
        self.leaves = sorted(disks, key=lambda d: d.cy)
        self.ys = [d.cy for d in self.leaves]
        self.height = max(len(self.leaves) - 1, 0).bit_length()  # root level

    def __len__(self) -> int:
        return len(self.leaves)

    def width(self, level: int) -> int:
        return (len(self.leaves) + (1 << level) - 1) >> level

    def leaf_range(self, node: NodeKey) -> tuple[int, int]:
        level, j = node
        return j << level, min((j + 1) << level, len(self.leaves))

    def disks_of(self, node: NodeKey) -> list[Disk]:
        lo, hi = self.leaf_range(node)
        return self.leaves[lo:hi]

    def children(self, node: NodeKey) -> list[NodeKey]:
        level, j = node
        if level == 0:
            return []
        return [(level - 1, c) for c in (2 * j, 2 * j + 1) if c < self.width(level - 1)]

    def cover(self, y: float, side: Side, level: int | None = None) -> list[NodeKey]:
        """
        Canonical nodes whose leaves are exactly the disks centered strictly
        above (or below) y; with `level` only the nodes on that level.
        """
        if not self.leaves:
            return []
        if side == Side.ABOVE:
            a, b = bisect_right(self.ys, y), len(self.leaves)
        else:
            a, b = 0, bisect_left(self.ys, y)
        out: list[NodeKey] = []
        if a < b:
            self._cover((self.height, 0), a, b, level, out)
        return out

    def _cover(self, node: NodeKey, a: int, b: int, level: int | None, out: list[NodeKey]) -> None:
        lo, hi = self.leaf_range(node)
        if hi <= a or lo >= b:
            return
        if a <= lo and hi <= b:
            if level is None or node[0] == level:
                out.append(node)
            return
        if level is not None and node[0] <= level:
            return
        for child in self.children(node):
            self._cover(child, a, b, level, out)


class TrimTask(BaseModel):
    """A disk of D- with its recursive arc and the running intersection."""
    disk: Disk
    arc_minus: Arc
    running: Arc


# ============================================================================
# Escape subarcs
# ============================================================================

def _escape_subarcs(arcs: list[Arc], u: SectorUnion, tol: Tolerance, descending: bool) -> tuple[list[Arc], int]:
    need: list[int] = []
    for a in arcs:
        if a.is_empty:
            need.append(0)
            continue
        start = a.point_at(a.theta_hi if descending else a.theta_lo)
        need.append(2 if point_in_union(u, start) else 1)

    hits: list[list[float]] = [[] for _ in arcs]
    events = 0
    live = [j for j, a in enumerate(arcs) if not a.is_empty]
    if live and not u.is_empty:
        red = [Edge.from_arc(arcs[j]) for j in live]
        blue = u.edges()

        def on_crossing(i: int, _: int, y: float, params: tuple[float, float]) -> bool:
            j = live[i]
            theta = params[0]
            seen = hits[j]
            if seen and abs(theta - seen[-1]) <= tol.angle_eps(arcs[j].disk.radius):
                return False
            seen.append(theta)
            return len(seen) >= need[j]

        events = overlay_sweep(
            red, blue,
            [e.bounds() for e in red], [e.bounds() for e in blue],
            lambda a, b: edge_crossings(a, b, tol),
            on_crossing,
            descending=descending,
            eps=tol.eps_g,
        )

    out = []
    for a, n, h in zip(arcs, need, hits):
        if n == 0:
            out.append(a)
        elif n == 1:
            # Start outside: escape until the first boundary crossing.
            if descending:
                out.append(Arc.span(a.disk, h[0] if h else a.theta_lo, a.theta_hi))
            else:
                out.append(Arc.span(a.disk, a.theta_lo, h[0] if h else a.theta_hi))
        elif not h:
            out.append(Arc.empty(a.disk))
        elif descending:
            out.append(Arc.span(a.disk, h[1] if len(h) > 1 else a.theta_lo, h[0]))
        else:
            out.append(Arc.span(a.disk, h[0], h[1] if len(h) > 1 else a.theta_hi))
    return out, events


def lowest_escape_subarcs(arcs: list[Arc], u: SectorUnion, tol: Tolerance | None = None) -> list[Arc]:
    """For each arc, its lowest connected component outside u (possibly empty)."""
    return _escape_subarcs(arcs, u, tol or default_tolerance(), descending=False)[0]


def highest_escape_subarcs(arcs: list[Arc], u: SectorUnion, tol: Tolerance | None = None) -> list[Arc]:
    """For each arc, its highest connected component outside u (possibly empty)."""
    return _escape_subarcs(arcs, u, tol or default_tolerance(), descending=True)[0]


# ============================================================================
# Merge
# ============================================================================

def assign_buckets(
    q_tree: YTree, tasks: list[TrimTask], side: Side, level: int | None = None
) -> dict[NodeKey, list[TrimTask]]:
    buckets: dict[NodeKey, list[TrimTask]] = {}
    for task in tasks:
        for node in q_tree.cover(task.disk.cy, side, level):
            buckets.setdefault(node, []).append(task)
    return buckets


def _next_level(q_tree: YTree, level: int, unions: dict[NodeKey, SectorUnion], tol: Tolerance) -> dict[NodeKey, SectorUnion]:
    parents = {}
    for j in range(q_tree.width(level + 1)):
        kids = [unions[c] for c in q_tree.children((level + 1, j))]
        parents[(level + 1, j)] = kids[0] if len(kids) == 1 else merge_unions(kids[0], kids[1], tol)
    return parents


def merge_maps(
    m_minus: ArcMap,
    d_plus: list[Disk],
    m_plus: ArcMap | None = None,
    tol: Tolerance | None = None,
    stats: MergeStats | None = None,
) -> ArcMap:
    """
    Trim every arc of m_minus by the larger disks d_plus. Arcs of m_plus,
    when given, pass through unchanged.
    """
    tol = tol or default_tolerance()
    stats = stats if stats is not None else MergeStats()
    stats.n_plus, stats.n_minus = len(d_plus), len(m_minus)

    q_tree = YTree(d_plus)
    tasks = [TrimTask(disk=a.disk, arc_minus=a, running=a) for a in m_minus.sorted_arcs()]
    unions = {(0, j): SectorUnion.of_sector(sector_of(d)) for j, d in enumerate(q_tree.leaves)}

    for level in range(q_tree.height + 1 if d_plus and tasks else 0):
        stats.node_disks += len(d_plus)
        stats.max_union_edges = max([stats.max_union_edges, *(u.edge_count for u in unions.values())])
        live = [t for t in tasks if not t.running.is_empty]
        for side, escape in ((Side.ABOVE, False), (Side.BELOW, True)):
            for node, bucket in assign_buckets(q_tree, live, side, level).items():
                full = [right_arc(t.disk) for t in bucket]
                escaped, events = _escape_subarcs(full, unions[node], tol, descending=escape)
                for task, piece in zip(bucket, escaped):
                    task.running = intersect_arcs(task.running, piece, tol)
                stats.bucket_entries += len(bucket)
                stats.sweeps += 1
                stats.sweep_events += events
        logger.debug("merge level %d: %d unions, %d live arcs", level, len(unions), len(live))
        if level < q_tree.height:
            unions = _next_level(q_tree, level, unions, tol)

    out = [t.running for t in tasks]
    if m_plus is not None:
        out.extend(m_plus.sorted_arcs())
    return ArcMap.from_arcs(out, frame=m_minus.frame)


# ============================================================================
# Builder
# ============================================================================

def build_dc(
    disks: list[Disk],
    tol: Tolerance | None = None,
    frame: Frame = Frame.RIGHT,
    stats: list[MergeStats] | None = None,
    check: bool = True,
) -> ArcMap:
    """Map of the frame, built by recursive halving on radius."""
    tol = tol or default_tolerance()
    if check:
        require_general_position(disks, tol)
    base = get_settings().dc_base_case
    ordered = sorted(disks, key=lambda d: d.radius, reverse=True)
    result = _build(ordered, tol, frame, base, stats if stats is not None else [])
    logger.debug("dc build (%s frame): %d disks -> %d arcs", frame.value, len(disks), len(result))
    return result


def _build(ordered: list[Disk], tol: Tolerance, frame: Frame, base: int, stats: list[MergeStats]) -> ArcMap:
    if len(ordered) <= base:
        return build_naive(ordered, tol, frame, check=False)
    half = len(ordered) // 2
    plus, minus = ordered[:half], ordered[half:]
    m_plus = _build(plus, tol, frame, base, stats)
    m_minus = _build(minus, tol, frame, base, stats)
    merge = MergeStats()
    merged = merge_maps(m_minus, plus, m_plus=m_plus, tol=tol, stats=merge)
    stats.append(merge)
    return merged
