"""
Benchmark rows for the build and query paths.

One row per instance size: build times for both builders (naive only up to
`naive_max`), query latency and locator comparisons, map size, locator
entries per arc, serialized size and the sector-union edge ratio.
"""

import logging
import math
import time

from pydantic import BaseModel
from tqdm import tqdm

from largest_disk.arcs import sector_of
from largest_disk.config import get_settings
from largest_disk.engine import Structure, preprocess
from largest_disk.homothet_union import union_of_sectors
from largest_disk.instances import generate_instance, sample_probes
from largest_disk.models import Frame
from largest_disk.storage import serialized_size

logger = logging.getLogger(__name__)

UNION_SAMPLE_MAX = 4096


class BenchRow(BaseModel):
    n: int
    naive_seconds: float | None = None
    dc_seconds: float = 0.0
    query_mean_us: float = 0.0
    comparisons_mean: float = 0.0
    comparisons_max: int = 0
    arcs: int = 0
    locator_entries_per_arc: float = 0.0
    serialized_bytes: int = 0
    union_edges_per_sector: float = 0.0
    dc_work_ratio: float = 0.0


def _time_build(disks, builder: str, repeats: int) -> tuple[float, Structure]:
    best, structure = math.inf, None
    for _ in range(repeats):
        started = time.perf_counter()
        structure = preprocess(disks, builder=builder)
        best = min(best, time.perf_counter() - started)
    return best, structure


def bench_size(n: int, repeats: int = 1, seed: int = 0, naive_max: int = 2048, queries: int = 1000) -> BenchRow:
    disks = generate_instance(n, seed)
    row = BenchRow(n=n)

    row.dc_seconds, structure = _time_build(disks, "dc", repeats)
    if n <= naive_max:
        row.naive_seconds, _ = _time_build(disks, "naive", repeats)

    probes = sample_probes(disks, queries, seed + 1)
    started = time.perf_counter()
    for q in probes:
        structure.query(q)
    row.query_mean_us = 1e6 * (time.perf_counter() - started) / max(len(probes), 1)

    loc = structure.locator_of(Frame.RIGHT)
    costs = [loc.probe(q)[1] for q in probes]
    row.comparisons_mean = sum(costs) / max(len(costs), 1)
    row.comparisons_max = max(costs, default=0)

    row.arcs = sum(structure.stats.arcs.values())
    row.locator_entries_per_arc = sum(structure.stats.locator_entries.values()) / max(row.arcs, 1)
    row.serialized_bytes = serialized_size(structure)
    row.dc_work_ratio = structure.stats.work_ratio()

    sample = disks[:UNION_SAMPLE_MAX]
    if sample:
        union = union_of_sectors([sector_of(d) for d in sample])
        row.union_edges_per_sector = union.edge_count / len(sample)

    settings = get_settings()
    if row.locator_entries_per_arc > settings.locator_entry_bound:
        logger.warning(
            "n=%d: %.1f locator entries per arc exceeds %d",
            n, row.locator_entries_per_arc, settings.locator_entry_bound,
        )
    if row.union_edges_per_sector > settings.union_edge_bound:
        logger.warning(
            "n=%d: %.1f union edges per sector exceeds %d",
            n, row.union_edges_per_sector, settings.union_edge_bound,
        )
    logger.info("bench n=%d: dc %.3fs, naive %s", n, row.dc_seconds, row.naive_seconds)
    return row


def run_bench(
    sizes: list[int],
    repeats: int = 1,
    seed: int = 0,
    naive_max: int = 2048,
    queries: int = 1000,
    progress: bool = True,
) -> list[BenchRow]:
    return [
        bench_size(n, repeats, seed, naive_max, queries)
        for n in tqdm(sizes, desc="bench", unit="size", disable=not progress)
    ]
