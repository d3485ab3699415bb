"""Rightward ray shooting over a finished planar map."""

import logging

import numpy as np

from largest_disk.arcs import Arc, ArcMap
from largest_disk.config import default_tolerance
from largest_disk.errors import DegenerateInput
from largest_disk.models import Frame, Point, Tolerance
from largest_disk.slab_index import SlabIndex

logger = logging.getLogger(__name__)


class Locator:
    """
    First arc hit by the ray from q in direction 0. Immutable once built, so
    one instance can serve any number of concurrent readers.
    """

    def __init__(self, frame: Frame, arcs: list[Arc], index: SlabIndex):
        self.frame = frame
        self.arcs = arcs
        self.index = index

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def entry_count(self) -> int:
        return self.index.entry_count

    def probe(self, q: Point) -> tuple[int | None, int]:
        """(disk id of the first arc right of q or None, comparisons made)."""
        hit, comparisons = self.index.first_right(q.x, q.y)
        return (None if hit is None else self.arcs[hit].owner), comparisons

    def tables(self) -> dict[str, np.ndarray]:
        return self.index.to_arrays()

    @classmethod
    def from_tables(cls, frame: Frame, arcs: list[Arc], tables: dict[str, np.ndarray]) -> "Locator":
        return cls(frame, arcs, SlabIndex.from_arrays(arcs, tables))


def _check_endpoint_heights(arcs: list[Arc], tol: Tolerance) -> None:
    """Distinct arc endpoints may not share a height; a shared vertex is fine."""
    ends = sorted((p.y, p.x, a.owner) for a in arcs for p in a.endpoints())
    for (y0, x0, d0), (y1, x1, d1) in zip(ends, ends[1:]):
        if y0 == y1 and d0 != d1 and abs(x1 - x0) > tol.eps_g:
            raise DegenerateInput(f"arcs of disks {d0} and {d1} end at the same height y={y0!r}")


def build_locator(m: ArcMap, tol: Tolerance | None = None) -> Locator:
    arcs = m.sorted_arcs()
    _check_endpoint_heights(arcs, tol or default_tolerance())
    loc = Locator(m.frame, arcs, SlabIndex(arcs))
    logger.debug(
        "locator (%s frame): %d arcs, %d entries", m.frame.value, len(arcs), loc.entry_count
    )
    return loc


def first_arc_right(loc: Locator, q: Point) -> int | None:
    return loc.probe(q)[0]


def scan_first_arc_right(arcs: list[Arc], q: Point) -> int | None:
    """Linear-scan ray shooting, used to check the locator."""
    best, best_x = None, float("inf")
    for a in arcs:
        if a.is_empty or not (a.y_min <= q.y <= a.y_max):
            continue
        x = a.x_at(q.y)
        if q.x < x < best_x:
            best, best_x = a.owner, x
    return best
