import math

import pytest

from largest_disk.arcs import sector_of
from largest_disk.geom import in_sector
from largest_disk.instances import generate_instance
from largest_disk.models import Disk, Point, Tolerance


def disk(disk_id: int, x: float, y: float, r: float) -> Disk:
    return Disk(id=disk_id, center=Point(x=x, y=y), radius=r)


def dense_instance(n: int, seed: int) -> list[Disk]:
    """Heavily overlapping instance: many arcs get trimmed."""
    return generate_instance(n, seed, bbox=10.0 + 2.0 * math.sqrt(n), r_min=1.0, r_max=12.0)


def in_any_sector(disks: list[Disk], x: float, y: float, slack: float = 0.0) -> bool:
    return any(in_sector(x, y, d.cx, d.cy, d.radius, slack) for d in disks)


def near_sector_boundary(disks: list[Disk], x: float, y: float, band: float = 1e-6) -> bool:
    return any(
        in_sector(x, y, d.cx, d.cy, d.radius, band) != in_sector(x, y, d.cx, d.cy, d.radius, -band)
        for d in disks
    )


@pytest.fixture
def tol() -> Tolerance:
    return Tolerance()


@pytest.fixture
def five_disks() -> list[Disk]:
    """
    Five disks: the big disk 1 holds q1 = (5, 0.2) in its right portion and
    q2 = (-5, 0.3) in its top portion; the small disk 2 sits between q2 and
    the big disk's right arc without containing q2.
    """
    return [
        disk(1, 0.0, 0.0, 10.0),
        disk(2, -2.0, 0.5, 1.0),
        disk(3, 7.0, -0.4, 1.5),
        disk(4, -6.0, 5.0, 3.0),
        disk(5, 3.0, -7.0, 4.0),
    ]


@pytest.fixture
def sectors_of():
    return lambda disks: [sector_of(d) for d in disks]
