"""Fixtures that produce real experiment CSVs through the fairnet CLI.

The chart package only ever sees the CSV files, so the fixtures shell out
to the installed CLI exactly the way a user would.  Input graphs are small
hand-built edge lists; nothing here imports the experiment package.
"""

import subprocess
import sys

import pytest


def run_cli(args, cwd=None):
    proc = subprocess.run(
        [sys.executable, "-m", "fairnet.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


def ring_edges(n=20, skip=5):
    """Connected ring with a few chords, enough headroom for new edges."""
    lines = []
    for i in range(n):
        lines.append(f"n{i} n{(i + 1) % n}")
    for i in range(0, n, skip):
        lines.append(f"n{i} n{(i + skip) % n}")
    return "\n".join(lines) + "\n"


STAR = "c a\nc b\nc d\nc e\n"

# two triangles, one carrying a pendant; only one side can reach the
# influencer, so sweeps on it report the unreachable share
ISLANDS = "a b\na c\nb c\na p\nd e\nd f\ne f\n"


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("csvs")
    (d / "ring.edges").write_text(ring_edges())
    (d / "star.edges").write_text(STAR)
    (d / "islands.edges").write_text(ISLANDS)

    run_cli(
        [
            "sweep",
            "--graph",
            str(d / "ring.edges"),
            "--n-visits",
            "30",
            "--checkpoint-every",
            "10",
            "--seeds",
            "0,1,2",
            "--p-values",
            "0,0.5,1",
            "--ab-pairs",
            "0:0,1:1",
            "--output",
            str(d / "sweep.csv"),
        ]
    )
    run_cli(
        [
            "sweep",
            "--graph",
            str(d / "ring.edges"),
            "--n-visits",
            "20",
            "--checkpoint-every",
            "10",
            "--p-values",
            "0,0.25,0.5,0.75,1",
            "--ab-pairs",
            "1:0",
            "--output",
            str(d / "sweep_single.csv"),
        ]
    )
    run_cli(
        [
            "sweep",
            "--graph",
            str(d / "islands.edges"),
            "--n-visits",
            "20",
            "--checkpoint-every",
            "10",
            "--seeds",
            "0,1",
            "--p-values",
            "0,1",
            "--ab-pairs",
            "0:0",
            "--output",
            str(d / "sweep_islands.csv"),
        ]
    )
    run_cli(
        [
            "baseline-convergence",
            "--n-nodes",
            "40",
            "--edge-counts",
            "60,90",
            "--seeds-per-point",
            "3",
            "--t-percent",
            "100",
            "--output",
            str(d / "convergence.csv"),
        ]
    )
    run_cli(
        ["scatter", "--graph", str(d / "star.edges"), "--output", str(d / "scatter.csv")]
    )
    return d
