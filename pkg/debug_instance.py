from dotenv import load_dotenv
load_dotenv()

import sys

from largest_disk.engine import explain, expected_frame, oracle_query, preprocess
from largest_disk.instances import read_disks
from largest_disk.models import Disk, Point


def five_disk_instance() -> list[Disk]:
    return [
        Disk(id=1, center=Point(x=0.0, y=0.0), radius=10.0),
        Disk(id=2, center=Point(x=-2.0, y=0.5), radius=1.0),
        Disk(id=3, center=Point(x=7.0, y=-0.4), radius=1.5),
        Disk(id=4, center=Point(x=-6.0, y=5.0), radius=3.0),
        Disk(id=5, center=Point(x=3.0, y=-7.0), radius=4.0),
    ]


def debug(disks: list[Disk], probes: list[Point]):
    structure = preprocess(disks)
    print("\n--- Maps ---")
    for frame, (m, loc) in structure.frames.items():
        print(f"{frame.value}: {len(m)} arcs, {loc.entry_count} locator entries")
        for arc in m.sorted_arcs():
            print(f"  disk {arc.owner}: [{arc.theta_lo:+.6f}, {arc.theta_hi:+.6f}]")

    for q in probes:
        print(f"\n--- Query ({q.x}, {q.y}) ---")
        for hit in explain(structure, q):
            print(f"{hit.frame.value:>6}: disk={hit.disk_id} contains={hit.contains} comparisons={hit.comparisons}")
        print(f"answer: {structure.query(q).disk_id}")
        print(f"oracle: {oracle_query(disks, q).disk_id} (portion: {expected_frame(disks, q)})")


if __name__ == "__main__":
    if len(sys.argv) > 1:
        disks = read_disks(sys.argv[1])
        probes = [Point(x=float(a), y=float(b)) for a, b in zip(sys.argv[2::2], sys.argv[3::2])]
    else:
        disks = five_disk_instance()
        probes = [Point(x=5.0, y=0.2), Point(x=-5.0, y=0.3)]
    debug(disks, probes)
