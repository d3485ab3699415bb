"""
Reference builder for the planar map of one frame.

Every disk's right arc is trimmed by every larger disk, one rule application
at a time. Quadratic, but simple enough to serve as the oracle for the
divide-and-conquer builder.
"""

import logging

from largest_disk.arcs import Arc, ArcMap, intersect_interval, rule_interval
from largest_disk.config import default_tolerance
from largest_disk.geom import THIRD_TURN, require_general_position
from largest_disk.models import Disk, Frame, Tolerance

logger = logging.getLogger(__name__)


def build_naive(
    disks: list[Disk],
    tol: Tolerance | None = None,
    frame: Frame = Frame.RIGHT,
    check: bool = True,
) -> ArcMap:
    """
    A_d^* for every disk: its right arc intersected with A_d^{d'} over all
    larger d'. Disks whose arc vanishes are left out of the map.
    """
    tol = tol or default_tolerance()
    if check:
        require_general_position(disks, tol)

    ordered = sorted(disks, key=lambda d: d.radius, reverse=True)
    arcs: list[Arc] = []
    for i, d in enumerate(ordered):
        aeps = tol.angle_eps(d.radius)
        lo, hi = -THIRD_TURN, THIRD_TURN
        for big in ordered[:i]:
            rlo, rhi = rule_interval(d, big, tol)
            lo, hi = intersect_interval(lo, hi, rlo, rhi, aeps)
            if lo > hi:
                break
        if lo <= hi:
            arcs.append(Arc(disk=d, theta_lo=lo, theta_hi=hi))

    logger.debug("naive build (%s frame): %d disks -> %d arcs", frame.value, len(disks), len(arcs))
    return ArcMap.from_arcs(arcs, frame=frame)
