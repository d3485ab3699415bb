"""
Floating-point geometric primitives and predicates.

Everything here is a pure function on immutable values. Comparisons are
made against the absolute tolerance `eps_g`; the general-position checks in
`engine.validate` keep inputs far enough from degeneracy for that to hold.
"""

import math
from typing import Iterable, Protocol

from pydantic import BaseModel, ConfigDict

from largest_disk.config import default_tolerance
from largest_disk.errors import DegenerateInput, ValidationError
from largest_disk.models import Disk, Point, Tolerance


SQRT3 = math.sqrt(3.0)
THIRD_TURN = math.pi / 3.0


# ============================================================================
# Types
# ============================================================================

class CircleCrossing(BaseModel):
    """A common point of two circles with its angle on each of them."""
    model_config = ConfigDict(frozen=True)

    point: Point
    theta_first: float
    theta_second: float
    tangent: bool = False


class HorizontalSpans(Protocol):
    """Anything that can report its intersection with a horizontal line."""

    def spans_at(self, y: float) -> list[tuple[float, float]]:
        ...


# ============================================================================
# Float helpers (hot paths work on plain floats)
# ============================================================================

def angle_of(cx: float, cy: float, x: float, y: float) -> float:
    return math.atan2(y - cy, x - cx)


def on_circle(cx: float, cy: float, r: float, theta: float) -> tuple[float, float]:
    return cx + r * math.cos(theta), cy + r * math.sin(theta)


def right_x_at(cx: float, cy: float, r: float, y: float) -> float:
    """x of the right half of the circle at height y (clamped at the extremes)."""
    dy = y - cy
    h = r * r - dy * dy
    return cx + math.sqrt(h) if h > 0.0 else cx


def in_sector(px: float, py: float, cx: float, cy: float, r: float, slack: float = 0.0) -> bool:
    """
    Closed membership in the right portion of a disk: within the radius and
    within +-pi/3 of direction 0. A positive `slack` grows the region, a
    negative one shrinks it.
    """
    vx = px - cx
    vy = py - cy
    rr = r + slack
    if rr <= 0.0 or vx * vx + vy * vy > rr * rr:
        return False
    # Signed distance to each bounding ray's line is (sqrt3*vx -+ vy) / 2.
    return SQRT3 * vx - abs(vy) >= -2.0 * slack


def sector_span_at(cx: float, cy: float, r: float, y: float) -> tuple[float, float] | None:
    """Intersection of the right portion with the line at height y."""
    eta = y - cy
    if eta * eta > 0.75 * r * r:
        return None
    lo = cx + abs(eta) / SQRT3
    hi = cx + math.sqrt(max(r * r - eta * eta, 0.0))
    return (lo, hi) if lo <= hi else None


def circle_pair(
    x1: float, y1: float, r1: float,
    x2: float, y2: float, r2: float,
    eps: float,
) -> tuple[list[tuple[float, float]], bool]:
    """
    Common points of two circles as ((x, y) list, tangent flag).
    Raises DegenerateInput for coincident circles.
    """
    dx = x2 - x1
    dy = y2 - y1
    d = math.hypot(dx, dy)
    if d <= eps and abs(r1 - r2) <= eps:
        raise DegenerateInput("circles coincide")
    if d <= eps:
        return [], False
    if d > r1 + r2 + eps or d < abs(r1 - r2) - eps:
        return [], False
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    ux, uy = dx / d, dy / d
    mx, my = x1 + a * ux, y1 + a * uy
    if abs(d - (r1 + r2)) <= eps or abs(d - abs(r1 - r2)) <= eps:
        return [(mx, my)], True
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    return [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)], False


def segment_circle_params(
    x0: float, y0: float, x1: float, y1: float,
    cx: float, cy: float, r: float,
    eps: float,
) -> tuple[list[float], bool]:
    """
    Parameters t in [0, 1] where segment (x0,y0)->(x1,y1) meets the circle,
    plus a flag telling whether the supporting line is tangent.
    """
    vx, vy = x1 - x0, y1 - y0
    wx, wy = x0 - cx, y0 - cy
    a = vx * vx + vy * vy
    if a == 0.0:
        return [], False
    b = 2.0 * (vx * wx + vy * wy)
    c = wx * wx + wy * wy - r * r
    length = math.sqrt(a)
    line_dist = abs(vx * wy - vy * wx) / length
    tangent = abs(line_dist - r) <= eps
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if not tangent:
            return [], False
        disc = 0.0
    root = math.sqrt(disc)
    candidates = [(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)]
    if tangent:
        candidates = [-b / (2.0 * a)]
    t_eps = eps / length
    params = [min(max(t, 0.0), 1.0) for t in candidates if -t_eps <= t <= 1.0 + t_eps]
    return params, tangent


def segment_pair_params(
    ax: float, ay: float, bx: float, by: float,
    cx: float, cy: float, dx: float, dy: float,
    eps: float,
) -> tuple[float, float] | None:
    """Parameters (t, u) of the proper crossing of segments ab and cd, if any."""
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    denom = rx * sy - ry * sx
    if abs(denom) <= eps * eps:
        return None
    qx, qy = cx - ax, cy - ay
    t = (qx * sy - qy * sx) / denom
    u = (qx * ry - qy * rx) / denom
    t_eps = eps / max(math.hypot(rx, ry), eps)
    u_eps = eps / max(math.hypot(sx, sy), eps)
    if -t_eps <= t <= 1.0 + t_eps and -u_eps <= u <= 1.0 + u_eps:
        return min(max(t, 0.0), 1.0), min(max(u, 0.0), 1.0)
    return None


# ============================================================================
# Operations
# ============================================================================

def point_in_disk(q: Point, d: Disk, tol: Tolerance | None = None) -> bool:
    """Closed containment: |q - center| <= radius, up to eps_g."""
    tol = tol or default_tolerance()
    return math.hypot(q.x - d.cx, q.y - d.cy) <= d.radius + tol.eps_g


def circle_circle_intersections(d: Disk, d2: Disk, tol: Tolerance | None = None) -> list[CircleCrossing]:
    """
    0, 1 or 2 common points of the two boundary circles. A single point is a
    tangency and is flagged as such.
    """
    tol = tol or default_tolerance()
    try:
        points, tangent = circle_pair(d.cx, d.cy, d.radius, d2.cx, d2.cy, d2.radius, tol.eps_g)
    except DegenerateInput as e:
        raise DegenerateInput(f"disks {d.id} and {d2.id}: {e}") from e
    return [
        CircleCrossing(
            point=Point(x=x, y=y),
            theta_first=angle_of(d.cx, d.cy, x, y),
            theta_second=angle_of(d2.cx, d2.cy, x, y),
            tangent=tangent,
        )
        for x, y in points
    ]


def rotate_xy(x: float, y: float, theta: float) -> tuple[float, float]:
    c, s = math.cos(theta), math.sin(theta)
    return c * x - s * y, s * x + c * y


def rotate_point(q: Point, theta: float) -> Point:
    """Rotation about the origin by theta."""
    x, y = rotate_xy(q.x, q.y, theta)
    return Point(x=x, y=y)


def rotate_disk(d: Disk, theta: float) -> Disk:
    return Disk(id=d.id, center=rotate_point(d.center, theta), radius=d.radius)


def dist_x_to_region(p: Point, region: HorizontalSpans) -> float:
    """
    Rightward horizontal distance from p to the region: the smallest
    non-negative x offset at p's height, or +inf when the ray misses.
    """
    return dist_x_to_spans(p.x, region.spans_at(p.y))


def dist_x_to_spans(px: float, spans: Iterable[tuple[float, float]]) -> float:
    best = math.inf
    for lo, hi in spans:
        if hi < px:
            continue
        best = min(best, max(lo - px, 0.0))
    return best


# ============================================================================
# General position
# ============================================================================

FRAME_LABELS = {0.0: "0", 2.0 * math.pi / 3.0: "+2pi/3", -2.0 * math.pi / 3.0: "-2pi/3"}


def general_position_violations(
    disks: list[Disk],
    tol: Tolerance,
    frame_angles: Iterable[float] = (0.0, 2.0 * math.pi / 3.0, -2.0 * math.pi / 3.0),
) -> list[str]:
    """
    Everything that keeps an instance out of general position: duplicate ids,
    non-finite or non-positive values, radius ties, and center y ties in each
    rotated frame. Adjacent pairs after sorting are enough to find every tie.
    """
    violations: list[str] = []
    seen: set[int] = set()
    for d in disks:
        if d.id in seen:
            violations.append(f"duplicate id {d.id}")
        seen.add(d.id)
        if not (math.isfinite(d.cx) and math.isfinite(d.cy) and math.isfinite(d.radius)):
            violations.append(f"disk {d.id}: non-finite value")
        elif d.radius <= 0.0:
            violations.append(f"disk {d.id}: radius must be positive")

    by_radius = sorted(disks, key=lambda d: d.radius)
    for a, b in zip(by_radius, by_radius[1:]):
        if b.radius - a.radius <= tol.eps_r:
            violations.append(f"radius tie between disks {a.id} and {b.id}")

    for angle in frame_angles:
        label = FRAME_LABELS.get(angle, f"{angle:.6f}")
        keyed = sorted((rotate_xy(d.cx, d.cy, -angle)[1], d.id) for d in disks)
        for (ya, ia), (yb, ib) in zip(keyed, keyed[1:]):
            if yb - ya <= tol.eps_c:
                violations.append(f"y tie (frame {label}) between disks {ia} and {ib}")
    return violations


def require_general_position(
    disks: list[Disk], tol: Tolerance, frame_angles: Iterable[float] = (0.0,)
) -> None:
    violations = general_position_violations(disks, tol, frame_angles)
    if violations:
        raise ValidationError(violations)
