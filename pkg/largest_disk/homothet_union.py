"""
Unions of right sectors (homothets of one 120-degree sector).

A union is stored by its boundary: closed chains of y-monotone edges, each
either a piece of a sector radius or a piece of a right arc, tagged with the
disk it comes from. Chains run with the interior on their left, so outer
chains are counter-clockwise and holes clockwise.

Two unions are merged by sweeping the overlay of their boundaries, cutting
every edge at the crossings found, and keeping the pieces of each boundary
that lie outside the other union.
"""

import logging
import math
from enum import Enum
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from largest_disk.arcs import Arc, Sector, sector_of
from largest_disk.config import default_tolerance
from largest_disk.errors import DegenerateInput
from largest_disk.geom import (
    THIRD_TURN,
    angle_of,
    circle_pair,
    on_circle,
    right_x_at,
    segment_circle_params,
    segment_pair_params,
)
from largest_disk.models import Disk, Point, Tolerance
from largest_disk.slab_index import SlabIndex
from largest_disk.sweep import Bounds, overlay_sweep

logger = logging.getLogger(__name__)


# ============================================================================
# Edges
# ============================================================================

class EdgeKind(str, Enum):
    SEGMENT = "segment"
    ARC = "arc"


class Edge(BaseModel):
    """
    A boundary edge running from (x0, y0) to (x1, y1).

    ARC edges lie on the right arc of `disk` and run counter-clockwise from
    theta_lo to theta_hi; the endpoints are cached for matching. A SEGMENT
    edge is parametrized by t in [0, 1]; an ARC edge by its angle.
    """
    model_config = ConfigDict(frozen=True)

    kind: EdgeKind
    disk: Disk
    x0: float
    y0: float
    x1: float
    y1: float
    theta_lo: float = 0.0
    theta_hi: float = 0.0

    @classmethod
    def segment(cls, disk: Disk, start: tuple[float, float], end: tuple[float, float]) -> "Edge":
        return cls(kind=EdgeKind.SEGMENT, disk=disk, x0=start[0], y0=start[1], x1=end[0], y1=end[1])

    @classmethod
    def arc(cls, disk: Disk, lo: float, hi: float) -> "Edge":
        x0, y0 = on_circle(disk.cx, disk.cy, disk.radius, lo)
        x1, y1 = on_circle(disk.cx, disk.cy, disk.radius, hi)
        return cls(
            kind=EdgeKind.ARC, disk=disk, x0=x0, y0=y0, x1=x1, y1=y1, theta_lo=lo, theta_hi=hi
        )

    @classmethod
    def from_arc(cls, a: Arc) -> "Edge":
        return cls.arc(a.disk, a.theta_lo, a.theta_hi)

    @property
    def y_min(self) -> float:
        return min(self.y0, self.y1)

    @property
    def y_max(self) -> float:
        return max(self.y0, self.y1)

    def bounds(self) -> Bounds:
        x_lo, x_hi = min(self.x0, self.x1), max(self.x0, self.x1)
        if self.kind == EdgeKind.ARC and self.theta_lo <= 0.0 <= self.theta_hi:
            x_hi = self.disk.cx + self.disk.radius
        return self.y_min, self.y_max, x_lo, x_hi

    def x_at(self, y: float) -> float:
        if self.kind == EdgeKind.ARC:
            return right_x_at(self.disk.cx, self.disk.cy, self.disk.radius, y)
        t = (y - self.y0) / (self.y1 - self.y0)
        return self.x0 + t * (self.x1 - self.x0)

    def point_at(self, param: float) -> tuple[float, float]:
        if self.kind == EdgeKind.ARC:
            return on_circle(self.disk.cx, self.disk.cy, self.disk.radius, param)
        return self.x0 + param * (self.x1 - self.x0), self.y0 + param * (self.y1 - self.y0)

    @property
    def param_range(self) -> tuple[float, float]:
        return (self.theta_lo, self.theta_hi) if self.kind == EdgeKind.ARC else (0.0, 1.0)

    def midpoint(self) -> tuple[float, float]:
        lo, hi = self.param_range
        return self.point_at(0.5 * (lo + hi))

    def piece(self, a: float, b: float) -> "Edge":
        if self.kind == EdgeKind.ARC:
            return Edge.arc(self.disk, a, b)
        return Edge.segment(self.disk, self.point_at(a), self.point_at(b))

    def split(self, params: Iterable[float], eps: float) -> list["Edge"]:
        """Pieces between consecutive cut parameters; pieces shorter than eps are dropped."""
        lo, hi = self.param_range
        scale = self.disk.radius if self.kind == EdgeKind.ARC else math.hypot(self.x1 - self.x0, self.y1 - self.y0)
        peps = eps / max(scale, eps)
        cuts = sorted(p for p in params if lo + peps < p < hi - peps)
        if not cuts:
            return [self]
        bounds = [lo, *cuts, hi]
        return [self.piece(a, b) for a, b in zip(bounds, bounds[1:]) if b - a > peps]

    def green_term(self) -> float:
        """Contribution to the enclosed area, integral of (x dy - y dx) / 2."""
        if self.kind == EdgeKind.SEGMENT:
            return 0.5 * (self.x0 * self.y1 - self.x1 * self.y0)
        cx, cy, r = self.disk.cx, self.disk.cy, self.disk.radius
        a, b = self.theta_lo, self.theta_hi
        return 0.5 * (
            r * r * (b - a)
            + r * cx * (math.sin(b) - math.sin(a))
            - r * cy * (math.cos(b) - math.cos(a))
        )


def _in_range(theta: float, lo: float, hi: float, eps: float) -> bool:
    return lo - eps <= theta <= hi + eps


def edge_crossings(e: Edge, f: Edge, tol: Tolerance) -> list[tuple[float, float, tuple[float, float]]]:
    """Common points of two edges as (x, y, (param on e, param on f))."""
    eps = tol.eps_g
    if e.kind == EdgeKind.SEGMENT and f.kind == EdgeKind.SEGMENT:
        hit = segment_pair_params(e.x0, e.y0, e.x1, e.y1, f.x0, f.y0, f.x1, f.y1, eps)
        if hit is None:
            return []
        x, y = e.point_at(hit[0])
        return [(x, y, hit)]

    if e.kind == EdgeKind.ARC and f.kind == EdgeKind.ARC:
        d, g = e.disk, f.disk
        points, tangent = circle_pair(d.cx, d.cy, d.radius, g.cx, g.cy, g.radius, eps)
        out = []
        for x, y in points:
            te = angle_of(d.cx, d.cy, x, y)
            tf = angle_of(g.cx, g.cy, x, y)
            if _in_range(te, e.theta_lo, e.theta_hi, tol.angle_eps(d.radius)) and _in_range(
                tf, f.theta_lo, f.theta_hi, tol.angle_eps(g.radius)
            ):
                if tangent:
                    raise DegenerateInput(f"arcs of disks {d.id} and {g.id} are tangent")
                out.append((x, y, (te, tf)))
        return out

    swapped = e.kind == EdgeKind.ARC
    seg, arc = (f, e) if swapped else (e, f)
    d = arc.disk
    params, tangent = segment_circle_params(seg.x0, seg.y0, seg.x1, seg.y1, d.cx, d.cy, d.radius, eps)
    out = []
    for t in params:
        x, y = seg.point_at(t)
        theta = angle_of(d.cx, d.cy, x, y)
        if not _in_range(theta, arc.theta_lo, arc.theta_hi, tol.angle_eps(d.radius)):
            continue
        if tangent:
            raise DegenerateInput(f"radius of disk {seg.disk.id} is tangent to the arc of disk {d.id}")
        out.append((x, y, (theta, t) if swapped else (t, theta)))
    return out


def sector_edges(s: Sector) -> list[Edge]:
    """Counter-clockwise boundary: lower radius, right arc, upper radius."""
    d = s.disk
    return [
        Edge.segment(d, s.apex, s.bottom_vertex),
        Edge.arc(d, -THIRD_TURN, THIRD_TURN),
        Edge.segment(d, s.top_vertex, s.apex),
    ]


# ============================================================================
# Unions
# ============================================================================

class SectorUnion(BaseModel):
    """Boundary representation of a union of right sectors."""
    model_config = ConfigDict(frozen=True)

    members: list[Disk] = Field(default_factory=list)
    chains: list[list[Edge]] = Field(default_factory=list)

    _index: SlabIndex | None = PrivateAttr(default=None)
    _edges: list[Edge] = PrivateAttr(default_factory=list)

    @classmethod
    def of_sector(cls, s: Sector) -> "SectorUnion":
        return cls(members=[s.disk], chains=[sector_edges(s)])

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def member_ids(self) -> set[int]:
        return {d.id for d in self.members}

    def edges(self) -> list[Edge]:
        return [e for chain in self.chains for e in chain]

    @property
    def edge_count(self) -> int:
        return sum(len(chain) for chain in self.chains)

    def index(self) -> SlabIndex:
        """Slab index over the boundary, built on first use."""
        if self._index is None:
            self._edges = self.edges()
            self._index = SlabIndex(self._edges)
        return self._index

    def contains_xy(self, x: float, y: float) -> bool:
        if not self.members:
            return False
        hit, _ = self.index().first_right(x, y)
        if hit is None:
            return False
        # The interior lies left of every edge, so inside iff the edge hit heads up.
        e = self._edges[hit]
        return e.y1 > e.y0

    def area(self) -> float:
        return sum(e.green_term() for e in self.edges())

    def spans_at(self, y: float) -> list[tuple[float, float]]:
        spans = []
        for d in self.members:
            spans.extend(sector_of(d).spans_at(y))
        return spans


def _link_chains(pieces: list[Edge], link_eps: float) -> list[list[Edge]]:
    """Chain edges end to start; endpoints are matched on a grid of cell link_eps."""
    def cell(x: float, y: float) -> tuple[int, int]:
        return round(x / link_eps), round(y / link_eps)

    by_start: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(pieces):
        by_start.setdefault(cell(e.x0, e.y0), []).append(i)

    used = [False] * len(pieces)
    chains: list[list[Edge]] = []
    for first in range(len(pieces)):
        if used[first]:
            continue
        chain = []
        current = first
        while current is not None:
            used[current] = True
            e = pieces[current]
            chain.append(e)
            cx, cy = cell(e.x1, e.y1)
            best, best_dist = None, math.inf
            for gx in (cx - 1, cx, cx + 1):
                for gy in (cy - 1, cy, cy + 1):
                    for j in by_start.get((gx, gy), ()):
                        if used[j]:
                            continue
                        dist = math.hypot(pieces[j].x0 - e.x1, pieces[j].y0 - e.y1)
                        if dist < best_dist:
                            best, best_dist = j, dist
            current = best if best_dist <= 2.0 * link_eps else None
        chains.append(chain)
    return chains


def _overlay_cuts(e1: list[Edge], e2: list[Edge], tol: Tolerance) -> tuple[list[list[float]], list[list[float]], int]:
    cuts1: list[list[float]] = [[] for _ in e1]
    cuts2: list[list[float]] = [[] for _ in e2]

    def record(i: int, j: int, y: float, params: tuple[float, float]) -> bool:
        cuts1[i].append(params[0])
        cuts2[j].append(params[1])
        return False

    events = overlay_sweep(
        e1, e2,
        [e.bounds() for e in e1], [e.bounds() for e in e2],
        lambda a, b: edge_crossings(a, b, tol),
        record,
        eps=tol.eps_g,
    )
    return cuts1, cuts2, events


# ============================================================================
# Operations
# ============================================================================

def union_of_sectors(sectors: list[Sector], tol: Tolerance | None = None) -> SectorUnion:
    """Balanced pairwise merging of single-sector unions."""
    tol = tol or default_tolerance()
    unions = [SectorUnion.of_sector(s) for s in sectors]
    if not unions:
        return SectorUnion()
    while len(unions) > 1:
        merged = [merge_unions(a, b, tol) for a, b in zip(unions[::2], unions[1::2])]
        if len(unions) % 2:
            merged.append(unions[-1])
        unions = merged
    return unions[0]


def merge_unions(u1: SectorUnion, u2: SectorUnion, tol: Tolerance | None = None) -> SectorUnion:
    """Boundary of the set union of u1 and u2."""
    tol = tol or default_tolerance()
    ids1, ids2 = u1.member_ids, u2.member_ids
    if ids2 <= ids1:
        return u1
    if ids1 <= ids2:
        return u2
    if ids1 & ids2:
        u2 = union_of_sectors([sector_of(d) for d in u2.members if d.id not in ids1], tol)

    e1, e2 = u1.edges(), u2.edges()
    cuts1, cuts2, events = _overlay_cuts(e1, e2, tol)

    pieces: list[Edge] = []
    for edges, cuts, other in ((e1, cuts1, u2), (e2, cuts2, u1)):
        for e, params in zip(edges, cuts):
            for p in e.split(params, tol.eps_g):
                if not other.contains_xy(*p.midpoint()):
                    pieces.append(p)

    scale = max((abs(v) for e in pieces for v in (e.x0, e.y0)), default=1.0)
    chains = _link_chains(pieces, max(1e3 * tol.eps_g, 1e-12 * scale))
    logger.debug(
        "merged unions of %d and %d sectors: %d + %d edges -> %d (%d sweep events)",
        len(u1.members), len(u2.members), len(e1), len(e2), len(pieces), events,
    )
    return SectorUnion(members=u1.members + u2.members, chains=chains)


def point_in_union(u: SectorUnion, p: Point) -> bool:
    """Closed membership, answered by the first boundary edge right of p."""
    return u.contains_xy(p.x, p.y)


def boundary_edges(u: SectorUnion) -> list[Edge]:
    return u.edges()
