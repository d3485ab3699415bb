"""
On-disk structure container (numpy .npz).

Layout, version 2:
    format_version      int64[1]
    builder             str
    disk_ids            int64[n]
    disk_xyr            float64[n, 3]
    <frame>_arc_ids     int64[m]           frame in {right, top, bottom}
    <frame>_arc_theta   float64[m, 2]      (theta_lo, theta_hi) in the frame
    <frame>_<table>     locator tables: ys, roots, curve, left, right,
                                           mod_version, mod_side, mod_child

Arcs are listed in locator curve order, so `curve` entries index into them.
"""

import io
import logging
import zipfile
from pathlib import Path
from typing import BinaryIO

import numpy as np

from largest_disk.arcs import Arc, ArcMap
from largest_disk.config import default_tolerance
from largest_disk.engine import Structure, frame_disks
from largest_disk.errors import StructureFormatError
from largest_disk.locator import Locator
from largest_disk.models import BuildStats, Disk, Frame, Point
from largest_disk.slab_index import TABLES

logger = logging.getLogger(__name__)

FORMAT_VERSION = 2


def structure_arrays(s: Structure) -> dict[str, np.ndarray]:
    arrays: dict[str, np.ndarray] = {
        "format_version": np.asarray([FORMAT_VERSION], dtype=np.int64),
        "builder": np.asarray(s.stats.builder),
        "disk_ids": np.asarray([d.id for d in s.disks], dtype=np.int64),
        "disk_xyr": np.asarray([(d.cx, d.cy, d.radius) for d in s.disks], dtype=np.float64).reshape(-1, 3),
    }
    for frame in Frame:
        loc = s.locator_of(frame)
        arrays[f"{frame.value}_arc_ids"] = np.asarray([a.owner for a in loc.arcs], dtype=np.int64)
        arrays[f"{frame.value}_arc_theta"] = np.asarray(
            [(a.theta_lo, a.theta_hi) for a in loc.arcs], dtype=np.float64
        ).reshape(-1, 2)
        for name, table in loc.tables().items():
            arrays[f"{frame.value}_{name}"] = table
    return arrays


def save_structure(s: Structure, target: str | Path | BinaryIO) -> None:
    np.savez_compressed(target, **structure_arrays(s))


def serialized_size(s: Structure) -> int:
    buffer = io.BytesIO()
    save_structure(s, buffer)
    return buffer.tell()


def load_structure(source: str | Path | BinaryIO) -> Structure:
    """Reload a saved structure without rebuilding it."""
    try:
        with np.load(source, allow_pickle=False) as data:
            arrays = {k: data[k] for k in data.files}
    except (OSError, ValueError, zipfile.BadZipFile) as e:
        raise StructureFormatError(f"cannot read structure: {e}") from e

    version = arrays.get("format_version")
    if version is None:
        raise StructureFormatError("missing format_version")
    if int(version[0]) != FORMAT_VERSION:
        raise StructureFormatError(f"unsupported format_version {int(version[0])}")

    try:
        disks = [
            Disk(id=int(i), center=Point(x=float(x), y=float(y)), radius=float(r))
            for i, (x, y, r) in zip(arrays["disk_ids"], arrays["disk_xyr"])
        ]
        stats = BuildStats(builder=str(arrays["builder"]), n=len(disks))
        frames = {}
        for frame in Frame:
            local = {d.id: d for d in frame_disks(disks, frame)}
            arcs = [
                Arc(disk=local[int(i)], theta_lo=float(lo), theta_hi=float(hi))
                for i, (lo, hi) in zip(arrays[f"{frame.value}_arc_ids"], arrays[f"{frame.value}_arc_theta"])
            ]
            tables = {
                name: arrays[f"{frame.value}_{name}"]
                for name in TABLES
            }
            loc = Locator.from_tables(frame, arcs, tables)
            frames[frame] = (ArcMap.from_arcs(arcs, frame=frame), loc)
            stats.arcs[frame] = len(arcs)
            stats.locator_entries[frame] = loc.entry_count
    except KeyError as e:
        raise StructureFormatError(f"missing table {e}") from e

    logger.debug("loaded structure over %d disks", len(disks))
    return Structure(disks, frames, stats, default_tolerance())
