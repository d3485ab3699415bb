"""
Arc algebra on the right portions of disks.

A disk is cut into three equal portions by the radii at orientations pi/3,
pi and -pi/3. The right portion T_d is the sector within pi/3 of direction 0
and its boundary arc A_d is the "right arc". Subarcs of right arcs are
stored as angle intervals [theta_lo, theta_hi] inside [-pi/3, pi/3]; on that
range sin() is increasing, so every arc is the graph of a function x = f(y)
and angle order equals y order.
"""

import logging
import math
from itertools import combinations

from pydantic import BaseModel, ConfigDict, Field

from largest_disk.config import default_tolerance
from largest_disk.errors import ArcOwnerMismatch, DegenerateInput
from largest_disk.geom import (
    THIRD_TURN,
    angle_of,
    circle_pair,
    in_sector,
    on_circle,
    right_x_at,
    sector_span_at,
    segment_circle_params,
)
from largest_disk.models import Disk, Frame, Point, Tolerance

logger = logging.getLogger(__name__)

# Canonical empty interval (theta_lo > theta_hi).
_EMPTY_LO = 1.0
_EMPTY_HI = -1.0


# ============================================================================
# Types
# ============================================================================

class Sector(BaseModel):
    """The right portion T_d of a disk: apex at the center, 2pi/3 wide."""
    model_config = ConfigDict(frozen=True)

    disk: Disk

    @property
    def apex(self) -> tuple[float, float]:
        return self.disk.cx, self.disk.cy

    @property
    def top_vertex(self) -> tuple[float, float]:
        return on_circle(self.disk.cx, self.disk.cy, self.disk.radius, THIRD_TURN)

    @property
    def bottom_vertex(self) -> tuple[float, float]:
        return on_circle(self.disk.cx, self.disk.cy, self.disk.radius, -THIRD_TURN)

    def contains(self, p: Point, slack: float = 0.0) -> bool:
        return in_sector(p.x, p.y, self.disk.cx, self.disk.cy, self.disk.radius, slack)

    def spans_at(self, y: float) -> list[tuple[float, float]]:
        span = sector_span_at(self.disk.cx, self.disk.cy, self.disk.radius, y)
        return [span] if span else []


class Arc(BaseModel):
    """A (possibly empty) subarc of a disk's right arc."""
    model_config = ConfigDict(frozen=True)

    disk: Disk
    theta_lo: float = Field(ge=-THIRD_TURN - 1e-12, le=THIRD_TURN + 1e-12)
    theta_hi: float = Field(ge=-THIRD_TURN - 1e-12, le=THIRD_TURN + 1e-12)

    @classmethod
    def empty(cls, disk: Disk) -> "Arc":
        return cls(disk=disk, theta_lo=_EMPTY_LO, theta_hi=_EMPTY_HI)

    @classmethod
    def span(cls, disk: Disk, lo: float, hi: float) -> "Arc":
        """Arc over [lo, hi] clamped to the right arc; empty when lo > hi."""
        if lo > hi:
            return cls.empty(disk)
        return cls(disk=disk, theta_lo=max(lo, -THIRD_TURN), theta_hi=min(hi, THIRD_TURN))

    @property
    def is_empty(self) -> bool:
        return self.theta_lo > self.theta_hi

    @property
    def owner(self) -> int:
        return self.disk.id

    @property
    def length(self) -> float:
        return 0.0 if self.is_empty else (self.theta_hi - self.theta_lo) * self.disk.radius

    def point_at(self, theta: float) -> Point:
        x, y = on_circle(self.disk.cx, self.disk.cy, self.disk.radius, theta)
        return Point(x=x, y=y)

    def endpoints(self) -> tuple[Point, Point]:
        """(lower, upper) endpoints."""
        return self.point_at(self.theta_lo), self.point_at(self.theta_hi)

    @property
    def y_min(self) -> float:
        return self.disk.cy + self.disk.radius * math.sin(self.theta_lo)

    @property
    def y_max(self) -> float:
        return self.disk.cy + self.disk.radius * math.sin(self.theta_hi)

    def x_at(self, y: float) -> float:
        return right_x_at(self.disk.cx, self.disk.cy, self.disk.radius, y)

    def theta_at(self, y: float) -> float:
        s = (y - self.disk.cy) / self.disk.radius
        return math.asin(min(max(s, -1.0), 1.0))

    def spans_at(self, y: float) -> list[tuple[float, float]]:
        if self.is_empty or not (self.y_min <= y <= self.y_max):
            return []
        x = self.x_at(y)
        return [(x, x)]

    def contains_angle(self, theta: float, eps: float = 0.0) -> bool:
        return self.theta_lo - eps <= theta <= self.theta_hi + eps


class ArcMap(BaseModel):
    """A planar map: at most one non-empty arc per disk, living in one frame."""
    frame: Frame = Frame.RIGHT
    arcs: dict[int, Arc] = Field(default_factory=dict)

    @classmethod
    def from_arcs(cls, arcs: list[Arc], frame: Frame = Frame.RIGHT) -> "ArcMap":
        kept: dict[int, Arc] = {}
        for arc in arcs:
            if arc.is_empty:
                continue
            if arc.owner in kept:
                raise DegenerateInput(f"disk {arc.owner} contributes two arcs")
            kept[arc.owner] = arc
        return cls(frame=frame, arcs=kept)

    def __len__(self) -> int:
        return len(self.arcs)

    def arc_of(self, disk_id: int) -> Arc | None:
        return self.arcs.get(disk_id)

    def sorted_arcs(self) -> list[Arc]:
        return [self.arcs[k] for k in sorted(self.arcs)]

    def differences(self, other: "ArcMap", angle_tol: float = 1e-7) -> list[str]:
        """Human-readable differences between two maps (empty when equal)."""
        diffs = []
        for disk_id in sorted(set(self.arcs) | set(other.arcs)):
            a, b = self.arcs.get(disk_id), other.arcs.get(disk_id)
            if a is None or b is None:
                diffs.append(f"disk {disk_id}: present only in {'second' if a is None else 'first'} map")
            elif abs(a.theta_lo - b.theta_lo) > angle_tol or abs(a.theta_hi - b.theta_hi) > angle_tol:
                diffs.append(
                    f"disk {disk_id}: [{a.theta_lo:.10f}, {a.theta_hi:.10f}] "
                    f"vs [{b.theta_lo:.10f}, {b.theta_hi:.10f}]"
                )
        return diffs


# ============================================================================
# Interval helpers
# ============================================================================

def intersect_interval(
    lo1: float, hi1: float, lo2: float, hi2: float, eps: float = 0.0
) -> tuple[float, float]:
    """Intersection of two angle intervals; slivers shorter than eps become empty."""
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if hi - lo < eps or lo > hi:
        return _EMPTY_LO, _EMPTY_HI
    return lo, hi


def _cut_angles(d: Disk, big: Disk, eps: float) -> list[float]:
    """Angles on d's circle where it meets the boundary of big's right portion."""
    cuts = []
    points, _ = circle_pair(d.cx, d.cy, d.radius, big.cx, big.cy, big.radius, eps)
    big_eps = eps / big.radius
    for x, y in points:
        if abs(angle_of(big.cx, big.cy, x, y)) <= THIRD_TURN + big_eps:
            cuts.append(angle_of(d.cx, d.cy, x, y))
    for sign in (1.0, -1.0):
        vx, vy = on_circle(big.cx, big.cy, big.radius, sign * THIRD_TURN)
        params, _ = segment_circle_params(big.cx, big.cy, vx, vy, d.cx, d.cy, d.radius, eps)
        for t in params:
            x = big.cx + t * (vx - big.cx)
            y = big.cy + t * (vy - big.cy)
            cuts.append(angle_of(d.cx, d.cy, x, y))
    return cuts


def outside_intervals(
    d: Disk, lo: float, hi: float, big: Disk, tol: Tolerance
) -> list[tuple[float, float]]:
    """Components of arc [lo, hi] of d lying outside T_big, bottom to top."""
    if lo > hi:
        return []
    aeps = tol.angle_eps(d.radius)
    cuts = sorted(c for c in _cut_angles(d, big, tol.eps_g) if lo < c < hi)
    bounds = [lo, *cuts, hi]
    pieces: list[tuple[float, float]] = []
    for a, b in zip(bounds, bounds[1:]):
        if b - a < aeps:
            continue
        mx, my = on_circle(d.cx, d.cy, d.radius, 0.5 * (a + b))
        if in_sector(mx, my, big.cx, big.cy, big.radius):
            continue
        if pieces and a - pieces[-1][1] < aeps:
            pieces[-1] = (pieces[-1][0], b)
        else:
            pieces.append((a, b))
    if len(pieces) > 2:
        logger.warning("disk %s minus sector of %s has %d components", d.id, big.id, len(pieces))
        raise DegenerateInput(
            f"arc of disk {d.id} minus sector of disk {big.id} has {len(pieces)} components"
        )
    return pieces


def rule_interval(d: Disk, big: Disk, tol: Tolerance) -> tuple[float, float]:
    """A_d^{big} as an angle interval (Rules 1 and 2 on the full right arc)."""
    pieces = outside_intervals(d, -THIRD_TURN, THIRD_TURN, big, tol)
    match len(pieces):
        case 0:
            return _EMPTY_LO, _EMPTY_HI
        case 1:
            return pieces[0]
        case _:
            # Keep the component on the side of d's center relative to big's.
            return pieces[1] if d.cy > big.cy else pieces[0]


# ============================================================================
# Operations
# ============================================================================

def right_arc(d: Disk) -> Arc:
    return Arc(disk=d, theta_lo=-THIRD_TURN, theta_hi=THIRD_TURN)


def sector_of(d: Disk) -> Sector:
    return Sector(disk=d)


def subtract_sector(a: Arc, s: Sector, tol: Tolerance | None = None) -> list[Arc]:
    """Connected components of a minus s, ordered bottom to top (at most two)."""
    tol = tol or default_tolerance()
    if a.is_empty:
        return []
    pieces = outside_intervals(a.disk, a.theta_lo, a.theta_hi, s.disk, tol)
    return [Arc(disk=a.disk, theta_lo=lo, theta_hi=hi) for lo, hi in pieces]


def apply_rule(a: Arc, d: Disk, d2: Disk, tol: Tolerance | None = None) -> Arc:
    """
    Trim `a` (a subarc of d's right arc) by the larger disk d2: the rule is
    evaluated on the whole right arc of d and the result intersected with a.
    """
    tol = tol or default_tolerance()
    if d2.radius <= d.radius:
        raise ValueError(f"disk {d2.id} is not larger than disk {d.id}")
    lo, hi = rule_interval(d, d2, tol)
    return intersect_arcs(a, Arc.span(d, lo, hi), tol)


def intersect_arcs(a: Arc, b: Arc, tol: Tolerance | None = None) -> Arc:
    tol = tol or default_tolerance()
    if a.owner != b.owner:
        raise ArcOwnerMismatch(f"arcs of disks {a.owner} and {b.owner} cannot be intersected")
    if a.is_empty or b.is_empty:
        return Arc.empty(a.disk)
    lo, hi = intersect_interval(
        a.theta_lo, a.theta_hi, b.theta_lo, b.theta_hi, tol.angle_eps(a.disk.radius)
    )
    return Arc.span(a.disk, lo, hi)


def conjugate_point(p: Point, a_owner: Disk, tol: Tolerance | None = None) -> Point:
    """The other point of the right arc on the vertical line through p."""
    tol = tol or default_tolerance()
    theta = angle_of(a_owner.cx, a_owner.cy, p.x, p.y)
    if abs(theta) <= tol.angle_eps(a_owner.radius):
        raise DegenerateInput(f"point is the apex of the right arc of disk {a_owner.id}")
    x, y = on_circle(a_owner.cx, a_owner.cy, a_owner.radius, -theta)
    return Point(x=x, y=y)


def portion_of(p: Point, d: Disk) -> Frame:
    """Which third of d the point falls in (by direction from the center)."""
    theta = angle_of(d.cx, d.cy, p.x, p.y)
    if -THIRD_TURN <= theta <= THIRD_TURN:
        return Frame.RIGHT
    return Frame.TOP if theta > 0 else Frame.BOTTOM


def find_crossings(m: ArcMap, tol: Tolerance | None = None) -> list[tuple[int, int]]:
    """
    Pairs of arcs crossing transversally. Touching at an endpoint of either
    arc is allowed.
    """
    tol = tol or default_tolerance()
    bad = []
    for a, b in combinations(m.sorted_arcs(), 2):
        points, tangent = circle_pair(
            a.disk.cx, a.disk.cy, a.disk.radius, b.disk.cx, b.disk.cy, b.disk.radius, tol.eps_g
        )
        if tangent:
            continue
        ea = 10.0 * tol.angle_eps(a.disk.radius)
        eb = 10.0 * tol.angle_eps(b.disk.radius)
        for x, y in points:
            ta = angle_of(a.disk.cx, a.disk.cy, x, y)
            tb = angle_of(b.disk.cx, b.disk.cy, x, y)
            if a.theta_lo + ea < ta < a.theta_hi - ea and b.theta_lo + eb < tb < b.theta_hi - eb:
                bad.append((a.owner, b.owner))
    return bad
