"""
Core data models for the largest-disk structure.

Values shared across modules live here; geometric objects with behavior of
their own (arcs, sectors, maps, unions) live next to their algorithms.
"""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, PositiveFloat


# ============================================================================
# Enums
# ============================================================================

class Frame(str, Enum):
    """The three rotated frames; each one hosts one planar map."""
    RIGHT = "right"
    TOP = "top"
    BOTTOM = "bottom"

    @property
    def angle(self) -> float:
        """Direction of the frame's query ray in the original plane."""
        match self:
            case Frame.RIGHT:
                return 0.0
            case Frame.TOP:
                return 2.0 * math.pi / 3.0
            case Frame.BOTTOM:
                return -2.0 * math.pi / 3.0


class Side(str, Enum):
    ABOVE = "above"
    BELOW = "below"


# ============================================================================
# Primitives
# ============================================================================

class Point(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: FiniteFloat
    y: FiniteFloat

    def __iter__(self):
        yield self.x
        yield self.y


class Disk(BaseModel):
    """Input disk; `id` is the caller's identity and is carried through."""
    model_config = ConfigDict(frozen=True)

    id: int
    center: Point
    radius: PositiveFloat

    @property
    def cx(self) -> float:
        return self.center.x

    @property
    def cy(self) -> float:
        return self.center.y


class Tolerance(BaseModel):
    """
    eps_g: general geometric comparisons (absolute, coordinate units).
    eps_r: minimum separation between two radii.
    eps_c: minimum separation between center coordinates in every frame.
    """
    model_config = ConfigDict(frozen=True)

    eps_g: PositiveFloat = 1e-9
    eps_r: PositiveFloat = 1e-7
    eps_c: PositiveFloat = 1e-7

    def angle_eps(self, radius: float) -> float:
        """eps_g expressed as an angle on a circle of the given radius."""
        return self.eps_g / radius


# ============================================================================
# Results
# ============================================================================

class ValidationReport(BaseModel):
    violations: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class QueryAnswer(BaseModel):
    """Largest disk containing the query point, plus per-frame candidates."""
    disk_id: int | None = None
    candidates: dict[Frame, int | None] = Field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.disk_id is not None


class MergeStats(BaseModel):
    """Work accounting for one divide-and-conquer merge step."""
    n_plus: int = 0
    n_minus: int = 0
    node_disks: int = 0       # sum of |D_v| over the tree
    bucket_entries: int = 0   # sum of |S_v| over both sweep directions
    sweeps: int = 0
    sweep_events: int = 0
    max_union_edges: int = 0

    @property
    def work(self) -> int:
        return self.node_disks + self.bucket_entries


class BuildStats(BaseModel):
    builder: str
    n: int
    arcs: dict[Frame, int] = Field(default_factory=dict)
    build_seconds: float = 0.0
    locator_entries: dict[Frame, int] = Field(default_factory=dict)
    merges: list[MergeStats] = Field(default_factory=list)

    def work_ratio(self) -> float:
        """Largest per-merge work divided by n log2 n of that merge."""
        worst = 0.0
        for m in self.merges:
            size = m.n_plus + m.n_minus
            if size > 1:
                worst = max(worst, m.work / (size * math.log2(size)))
        return worst
