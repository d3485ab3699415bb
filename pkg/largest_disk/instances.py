"""
Disk and query files, random instances and probe sampling.

Disk files hold one disk per line as `id x y r`; query files hold `x y`.
Blank lines and anything after `#` are ignored.
"""

import logging
import math
from pathlib import Path

import numpy as np

from largest_disk.config import default_tolerance, get_settings
from largest_disk.errors import GeometryError, InputFormatError
from largest_disk.models import Disk, Point, Tolerance

logger = logging.getLogger(__name__)

DISK_HEADER = "# largest-disk instance: id x y r"
QUERY_HEADER = "# largest-disk queries: x y"


# ============================================================================
# Parsing and writing
# ============================================================================

def _fields(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _float(token: str, number: int) -> float:
    try:
        value = float(token)
    except ValueError as e:
        raise InputFormatError(f"not a number: {token!r}", number) from e
    if not math.isfinite(value):
        raise InputFormatError(f"non-finite value: {token!r}", number)
    return value


def parse_disks(text: str) -> list[Disk]:
    disks = []
    for number, parts in _fields(text):
        if len(parts) != 4:
            raise InputFormatError(f"expected 'id x y r', got {len(parts)} fields", number)
        try:
            disk_id = int(parts[0])
        except ValueError as e:
            raise InputFormatError(f"disk id must be an integer: {parts[0]!r}", number) from e
        x, y, r = (_float(t, number) for t in parts[1:])
        if r <= 0.0:
            raise InputFormatError(f"radius must be positive: {parts[3]}", number)
        disks.append(Disk(id=disk_id, center=Point(x=x, y=y), radius=r))
    return disks


def parse_queries(text: str) -> list[Point]:
    points = []
    for number, parts in _fields(text):
        if len(parts) != 2:
            raise InputFormatError(f"expected 'x y', got {len(parts)} fields", number)
        points.append(Point(x=_float(parts[0], number), y=_float(parts[1], number)))
    return points


def read_disks(path: str | Path) -> list[Disk]:
    return parse_disks(Path(path).read_text(encoding="utf-8"))


def read_queries(path: str | Path) -> list[Point]:
    return parse_queries(Path(path).read_text(encoding="utf-8"))


def format_disks(disks: list[Disk]) -> str:
    lines = [DISK_HEADER]
    lines += [f"{d.id} {d.cx!r} {d.cy!r} {d.radius!r}" for d in disks]
    return "\n".join(lines) + "\n"


def format_queries(points: list[Point]) -> str:
    lines = [QUERY_HEADER]
    lines += [f"{p.x!r} {p.y!r}" for p in points]
    return "\n".join(lines) + "\n"


# ============================================================================
# Generation
# ============================================================================

def _frame_ys(xs: np.ndarray, ys: np.ndarray) -> list[np.ndarray]:
    out = [ys]
    for angle in (2.0 * math.pi / 3.0, -2.0 * math.pi / 3.0):
        # y after rotating by -angle
        out.append(-math.sin(angle) * xs + math.cos(angle) * ys)
    return out


def _crowded(values: np.ndarray, margin: float) -> np.ndarray:
    """Indices that sit within `margin` of their sorted predecessor."""
    order = np.argsort(values, kind="stable")
    gaps = np.diff(values[order])
    return order[1:][gaps <= margin]


def generate_instance(
    count: int,
    seed: int,
    bbox: float = 1000.0,
    r_min: float = 5.0,
    r_max: float = 80.0,
    tol: Tolerance | None = None,
    retries: int | None = None,
) -> list[Disk]:
    """
    Uniform centers in [-bbox, bbox]^2 and uniform radii in [r_min, r_max],
    with every general-position margin at least 10x the tolerances. Disks
    too close to a neighbour are redrawn, at most `retries` rounds.
    """
    tol = tol or default_tolerance()
    retries = retries if retries is not None else get_settings().gen_retries
    if count < 0:
        raise ValueError("count must be non-negative")
    if not 0.0 < r_min <= r_max:
        raise ValueError("radius range must satisfy 0 < r_min <= r_max")

    rng = np.random.default_rng(seed)
    xs = rng.uniform(-bbox, bbox, count)
    ys = rng.uniform(-bbox, bbox, count)
    rs = rng.uniform(r_min, r_max, count)

    for attempt in range(retries + 1):
        bad = set(_crowded(rs, 10.0 * tol.eps_r).tolist())
        for frame_y in _frame_ys(xs, ys):
            bad.update(_crowded(frame_y, 10.0 * tol.eps_c).tolist())
        if not bad:
            break
        if attempt == retries:
            raise GeometryError(f"could not separate {count} disks after {retries} rounds")
        idx = np.fromiter(sorted(bad), dtype=np.int64)
        xs[idx] = rng.uniform(-bbox, bbox, len(idx))
        ys[idx] = rng.uniform(-bbox, bbox, len(idx))
        rs[idx] = rng.uniform(r_min, r_max, len(idx))
        logger.debug("redrawing %d crowded disks", len(idx))

    return [
        Disk(id=i, center=Point(x=float(x), y=float(y)), radius=float(r))
        for i, (x, y, r) in enumerate(zip(xs, ys, rs))
    ]


def sample_probes(
    disks: list[Disk],
    count: int,
    seed: int,
    band: float | None = None,
    chunk: int = 2048,
) -> list[Point]:
    """
    Uniform points over the instance's bounding box (grown by 10%), keeping
    only those at least `band` away from every circle.
    """
    band = band if band is not None else 10.0 * default_tolerance().eps_g
    rng = np.random.default_rng(seed)
    if disks:
        cx = np.array([d.cx for d in disks])
        cy = np.array([d.cy for d in disks])
        r = np.array([d.radius for d in disks])
        lo_x, hi_x = float((cx - r).min()), float((cx + r).max())
        lo_y, hi_y = float((cy - r).min()), float((cy + r).max())
    else:
        cx = cy = r = np.empty(0)
        lo_x, hi_x, lo_y, hi_y = -1.0, 1.0, -1.0, 1.0
    pad_x, pad_y = 0.1 * (hi_x - lo_x), 0.1 * (hi_y - lo_y)

    kept: list[Point] = []
    while len(kept) < count:
        px = rng.uniform(lo_x - pad_x, hi_x + pad_x, chunk)
        py = rng.uniform(lo_y - pad_y, hi_y + pad_y, chunk)
        if len(r):
            for start in range(0, chunk, 256):
                sx, sy = px[start:start + 256, None], py[start:start + 256, None]
                gap = np.abs(np.hypot(sx - cx, sy - cy) - r).min(axis=1)
                for x, y, g in zip(sx[:, 0], sy[:, 0], gap):
                    if g >= band and len(kept) < count:
                        kept.append(Point(x=float(x), y=float(y)))
        else:
            kept.extend(Point(x=float(x), y=float(y)) for x, y in zip(px, py))
            kept = kept[:count]
    return kept
