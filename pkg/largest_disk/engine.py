"""
Largest-disk query engine.

Main entry point that ties the three frames together: the instance is
rotated into each frame, a map and a locator are built there, and a query
takes the best of the (at most three) frame candidates that contain it.
"""

import logging
import time
from typing import Callable

from pydantic import BaseModel, ConfigDict

from largest_disk.arcs import ArcMap, portion_of
from largest_disk.config import default_tolerance
from largest_disk.dc_builder import build_dc
from largest_disk.errors import ValidationError
from largest_disk.geom import general_position_violations, point_in_disk, rotate_disk, rotate_point
from largest_disk.locator import Locator, build_locator
from largest_disk.models import (
    BuildStats,
    Disk,
    Frame,
    MergeStats,
    Point,
    QueryAnswer,
    Tolerance,
    ValidationReport,
)
from largest_disk.naive_builder import build_naive

logger = logging.getLogger(__name__)

BUILDERS: dict[str, Callable[..., ArcMap]] = {
    "naive": build_naive,
    "dc": build_dc,
}


class FrameHit(BaseModel):
    """One frame's view of a query, for diagnostics."""
    model_config = ConfigDict(frozen=True)

    frame: Frame
    disk_id: int | None
    contains: bool
    comparisons: int


def frame_disks(disks: list[Disk], frame: Frame) -> list[Disk]:
    """The instance as seen from `frame` (rotated by minus the frame angle)."""
    if frame == Frame.RIGHT:
        return list(disks)
    return [rotate_disk(d, -frame.angle) for d in disks]


class Structure:
    """
    Three (ArcMap, Locator) pairs plus the original disks.

    Immutable after `preprocess`; queries may run concurrently.
    """

    def __init__(
        self,
        disks: list[Disk],
        frames: dict[Frame, tuple[ArcMap, Locator]],
        stats: BuildStats,
        tol: Tolerance,
    ):
        self.disks = disks
        self.by_id = {d.id: d for d in disks}
        self.frames = frames
        self.stats = stats
        self.tol = tol

    def __len__(self) -> int:
        return len(self.disks)

    def map_of(self, frame: Frame) -> ArcMap:
        return self.frames[frame][0]

    def locator_of(self, frame: Frame) -> Locator:
        return self.frames[frame][1]

    def query(self, q: Point) -> QueryAnswer:
        return query(self, q)


def validate(disks: list[Disk], tol: Tolerance | None = None) -> ValidationReport:
    """Every general-position violation of the instance, across all three frames."""
    tol = tol or default_tolerance()
    angles = [f.angle for f in Frame]
    return ValidationReport(violations=general_position_violations(disks, tol, angles))


def preprocess(disks: list[Disk], builder: str = "dc", tol: Tolerance | None = None) -> Structure:
    """
    Build the three frame maps and their locators.

    Args:
        disks: The instance; validated in all three frames first.
        builder: "dc" (divide and conquer) or "naive".
        tol: Tolerances; defaults to the configured ones.

    Returns:
        Structure: ready for `query`.
    """
    tol = tol or default_tolerance()
    if builder not in BUILDERS:
        raise ValueError(f"unknown builder {builder!r}; expected one of {sorted(BUILDERS)}")
    report = validate(disks, tol)
    if not report.ok:
        logger.warning("rejecting instance: %d violations", len(report.violations))
        raise ValidationError(report.violations)

    build = BUILDERS[builder]
    stats = BuildStats(builder=builder, n=len(disks))
    merges: list[MergeStats] = []
    extra = {"stats": merges} if builder == "dc" else {}
    frames: dict[Frame, tuple[ArcMap, Locator]] = {}
    started = time.perf_counter()
    for frame in Frame:
        local = frame_disks(disks, frame)
        m = build(local, tol, frame, check=False, **extra)
        loc = build_locator(m, tol)
        frames[frame] = (m, loc)
        stats.arcs[frame] = len(m)
        stats.locator_entries[frame] = loc.entry_count
    stats.build_seconds = time.perf_counter() - started
    stats.merges = merges

    logger.info(
        "built %s structure over %d disks in %.3fs (arcs: %s)",
        builder, len(disks), stats.build_seconds,
        ", ".join(f"{f.value}={n}" for f, n in stats.arcs.items()),
    )
    return Structure(list(disks), frames, stats, tol)


def explain(s: Structure, q: Point) -> list[FrameHit]:
    """Per-frame candidate, whether it contains q, and the locator cost."""
    hits = []
    for frame in Frame:
        _, loc = s.frames[frame]
        local_q = q if frame == Frame.RIGHT else rotate_point(q, -frame.angle)
        disk_id, comparisons = loc.probe(local_q)
        contains = disk_id is not None and point_in_disk(q, s.by_id[disk_id], s.tol)
        hits.append(FrameHit(frame=frame, disk_id=disk_id, contains=contains, comparisons=comparisons))
    return hits


def query(s: Structure, q: Point) -> QueryAnswer:
    """Largest disk containing q among the three frame candidates, or none."""
    best: Disk | None = None
    candidates: dict[Frame, int | None] = {}
    for hit in explain(s, q):
        candidates[hit.frame] = hit.disk_id
        if hit.contains:
            d = s.by_id[hit.disk_id]
            if best is None or d.radius > best.radius:
                best = d
    return QueryAnswer(disk_id=best.id if best else None, candidates=candidates)


def oracle_query(disks: list[Disk], q: Point, tol: Tolerance | None = None) -> QueryAnswer:
    """Linear scan: the largest disk containing q."""
    tol = tol or default_tolerance()
    best: Disk | None = None
    for d in disks:
        if point_in_disk(q, d, tol) and (best is None or d.radius > best.radius):
            best = d
    return QueryAnswer(disk_id=best.id if best else None)


def expected_frame(disks: list[Disk], q: Point, tol: Tolerance | None = None) -> Frame | None:
    """Frame whose portion of D_max(q) holds q; the frame that must find it."""
    answer = oracle_query(disks, q, tol)
    if answer.disk_id is None:
        return None
    owner = next(d for d in disks if d.id == answer.disk_id)
    return portion_of(q, owner)
