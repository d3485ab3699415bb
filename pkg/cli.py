"""
Command-line surface for the largest-disk structure.

    python cli.py gen --count 1000 --seed 7 -o disks.txt
    python cli.py build disks.txt -o disks.npz
    python cli.py query disks.npz queries.txt
    python cli.py verify disks.txt --probes 10000
    python cli.py bench --sizes 1024,8192
    python cli.py render disks.npz -o map.svg

Exit codes: 0 ok, 1 verification mismatch, 2 input error.
"""

import csv
import logging
import sys
from pathlib import Path

import click

from largest_disk.bench import BenchRow, run_bench
from largest_disk.config import get_settings
from largest_disk.engine import BUILDERS, oracle_query, preprocess
from largest_disk.errors import GeometryError
from largest_disk.instances import (
    format_disks,
    generate_instance,
    read_disks,
    read_queries,
    sample_probes,
)
from largest_disk.models import Frame
from largest_disk.render import render_svg
from largest_disk.storage import load_structure, save_structure

logger = logging.getLogger("largest_disk.cli")

EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _fail(message: str, code: int = EXIT_INPUT) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")


def _load_disks(path: Path):
    try:
        return read_disks(path)
    except (GeometryError, OSError) as e:
        _fail(f"{path}: {e}")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
def cli(verbose: bool) -> None:
    """Largest disk containing a query point."""
    level = logging.DEBUG if verbose else get_settings().log_level
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


# ============================================================================
# Commands
# ============================================================================

@cli.command()
@click.option("--count", type=click.IntRange(min=0), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--bbox", type=float, default=1000.0, show_default=True, help="Centers in [-bbox, bbox]^2.")
@click.option("--rmin", type=float, default=5.0, show_default=True)
@click.option("--rmax", type=float, default=80.0, show_default=True)
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path))
def gen(count: int, seed: int, bbox: float, rmin: float, rmax: float, out: Path | None) -> None:
    """Write a random instance in general position."""
    try:
        disks = generate_instance(count, seed, bbox, rmin, rmax)
    except (GeometryError, ValueError) as e:
        _fail(str(e))
    _emit(format_disks(disks), out)


@cli.command()
@click.argument("disk_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--builder", type=click.Choice(sorted(BUILDERS)), default="dc", show_default=True)
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path), required=True)
def build(disk_file: Path, builder: str, out: Path) -> None:
    """Build and save the structure; print stats as key=value lines."""
    disks = _load_disks(disk_file)
    try:
        structure = preprocess(disks, builder=builder)
    except GeometryError as e:
        _fail(str(e))
    save_structure(structure, out)

    stats = structure.stats
    click.echo(f"builder={stats.builder}")
    click.echo(f"disks={stats.n}")
    for frame in Frame:
        click.echo(f"arcs_{frame.value}={stats.arcs[frame]}")
    for frame in Frame:
        click.echo(f"locator_entries_{frame.value}={stats.locator_entries[frame]}")
    click.echo(f"build_seconds={stats.build_seconds:.6f}")
    if stats.merges:
        click.echo(f"work_ratio={stats.work_ratio():.4f}")


@cli.command()
@click.argument("structure_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("query_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path))
def query(structure_file: Path, query_file: Path, out: Path | None) -> None:
    """Answer one query per line: the disk id, or NONE."""
    try:
        structure = load_structure(structure_file)
        points = read_queries(query_file)
    except (GeometryError, OSError) as e:
        _fail(str(e))
    answers = []
    for q in points:
        answer = structure.query(q)
        answers.append("NONE" if answer.disk_id is None else str(answer.disk_id))
    _emit("".join(f"{a}\n" for a in answers), out)


@cli.command()
@click.argument("disk_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--probes", type=click.IntRange(min=0), default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--builder", type=click.Choice(sorted(BUILDERS)), default="dc", show_default=True)
def verify(disk_file: Path, probes: int, seed: int, builder: str) -> None:
    """Compare queries with the linear-scan oracle on random probes."""
    disks = _load_disks(disk_file)
    try:
        structure = preprocess(disks, builder=builder)
    except GeometryError as e:
        _fail(str(e))

    mismatches = 0
    first = None
    for q in sample_probes(disks, probes, seed):
        got = structure.query(q).disk_id
        want = oracle_query(disks, q).disk_id
        if got != want:
            mismatches += 1
            first = first or (q, got, want)
    click.echo(f"probes={probes}")
    click.echo(f"mismatches={mismatches}")
    if first is not None:
        q, got, want = first
        click.echo(f"first_mismatch=({q.x!r}, {q.y!r}) got={got} expected={want}")
        sys.exit(EXIT_MISMATCH)


@cli.command()
@click.option("--sizes", default="1024,8192,65536", show_default=True, help="Comma-separated instance sizes.")
@click.option("--repeats", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--naive-max", type=int, default=2048, show_default=True, help="Skip the naive builder above this size.")
@click.option("--queries", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path))
def bench(sizes: str, repeats: int, seed: int, naive_max: int, queries: int, out: Path | None) -> None:
    """Time both builders and the query path; write CSV rows."""
    try:
        size_list = [int(s) for s in sizes.split(",") if s.strip()]
    except ValueError:
        _fail(f"bad --sizes value: {sizes!r}")
    rows = run_bench(size_list, repeats, seed, naive_max, queries)

    fields = list(BenchRow.model_fields)
    handle = out.open("w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.model_dump().items()})
    finally:
        if out:
            handle.close()


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path))
def render(input_file: Path, out: Path | None) -> None:
    """Draw the disks and the three frame maps as SVG."""
    try:
        if input_file.suffix == ".npz":
            structure = load_structure(input_file)
            svg = render_svg(structure.disks, structure)
        else:
            disks = read_disks(input_file)
            svg = render_svg(disks, preprocess(disks))
    except (GeometryError, OSError) as e:
        _fail(str(e))
    _emit(svg, out)


if __name__ == "__main__":
    cli()
