import re

import pytest
from click.testing import CliRunner

from cli import cli
from conftest import dense_instance
from largest_disk.instances import format_disks, generate_instance, read_disks
from largest_disk.engine import oracle_query
from largest_disk.models import Point


def stats_of(output):
    return dict(line.split("=", 1) for line in output.splitlines() if re.match(r"^\w+=", line))


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def disk_file(tmp_path):
    path = tmp_path / "disks.txt"
    path.write_text(format_disks(dense_instance(40, 5)))
    return path


def test_gen_empty(runner):
    result = runner.invoke(cli, ["gen", "--count", "0"])
    assert result.exit_code == 0
    assert result.output.startswith("#")
    assert len(result.output.splitlines()) == 1


def test_gen_is_deterministic(runner, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    runner.invoke(cli, ["gen", "--count", "200", "--seed", "9", "-o", str(a)])
    runner.invoke(cli, ["gen", "--count", "200", "--seed", "9", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert len(read_disks(a)) == 200


def test_build_single_disk(runner, tmp_path):
    src = tmp_path / "one.txt"
    src.write_text("7 0 0 1\n")
    result = runner.invoke(cli, ["build", str(src), "-o", str(tmp_path / "one.npz")])
    assert result.exit_code == 0
    stats = stats_of(result.output)
    assert stats["arcs_right"] == stats["arcs_top"] == stats["arcs_bottom"] == "1"


def test_build_builders_agree(runner, disk_file, tmp_path):
    outputs = {}
    for builder in ("naive", "dc"):
        result = runner.invoke(cli, ["build", str(disk_file), "--builder", builder, "-o", str(tmp_path / f"{builder}.npz")])
        assert result.exit_code == 0
        stats = stats_of(result.output)
        outputs[builder] = {k: v for k, v in stats.items() if k.startswith("arcs_")}
    assert outputs["naive"] == outputs["dc"]


def test_build_malformed_line(runner, tmp_path):
    src = tmp_path / "bad.txt"
    src.write_text("# disks\n1 0 0 1\n2 0 oops 2\n")
    result = runner.invoke(cli, ["build", str(src), "-o", str(tmp_path / "x.npz")])
    assert result.exit_code == 2
    assert "line 3" in result.output


def test_build_rejects_degenerate_instance(runner, tmp_path):
    src = tmp_path / "tie.txt"
    src.write_text("1 0 0 1\n2 5 0 1\n")
    result = runner.invoke(cli, ["build", str(src), "-o", str(tmp_path / "x.npz")])
    assert result.exit_code == 2
    assert "radius tie" in result.output


def test_query(runner, disk_file, tmp_path):
    structure = tmp_path / "s.npz"
    runner.invoke(cli, ["build", str(disk_file), "-o", str(structure)])
    disks = read_disks(disk_file)
    biggest = max(disks, key=lambda d: d.radius)
    queries = tmp_path / "q.txt"
    queries.write_text(f"{biggest.cx} {biggest.cy}\n1e6 1e6\n")
    result = runner.invoke(cli, ["query", str(structure), str(queries)])
    assert result.exit_code == 0
    expected = oracle_query(disks, Point(x=biggest.cx, y=biggest.cy)).disk_id
    assert result.output.splitlines() == [str(expected), "NONE"]

    empty = tmp_path / "empty.txt"
    empty.write_text("")
    result = runner.invoke(cli, ["query", str(structure), str(empty)])
    assert result.exit_code == 0 and result.output == ""


@pytest.mark.parametrize("n", [10, 100])
def test_verify(runner, tmp_path, n):
    path = tmp_path / "g.txt"
    path.write_text(format_disks(generate_instance(n, n, bbox=50.0)))
    result = runner.invoke(cli, ["verify", str(path), "--probes", "2000", "--seed", "1"])
    assert result.exit_code == 0
    assert "mismatches=0" in result.output


def test_render(runner, tmp_path):
    src = tmp_path / "one.txt"
    src.write_text("1 0 0 1\n")
    result = runner.invoke(cli, ["render", str(src)])
    assert result.exit_code == 0
    assert result.output.count("<circle") == 1
    assert result.output.count("<path") == 3
    for frame in ("right", "top", "bottom"):
        assert f'id="frame-{frame}"' in result.output

    empty = tmp_path / "none.txt"
    empty.write_text("# nothing\n")
    result = runner.invoke(cli, ["render", str(empty)])
    assert result.exit_code == 0
    assert "<svg" in result.output and "<circle" not in result.output


def test_bench_rows(runner, tmp_path):
    out = tmp_path / "bench.csv"
    result = runner.invoke(cli, ["bench", "--sizes", "16,64", "--queries", "50", "-o", str(out)])
    assert result.exit_code == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("n,")
    assert len(rows) == 3
