"""Acceptance: every figure command renders the compiler's sweep CSVs.

Exercises the full external surface: the braidc CLI produces the CSVs
(desk-tiny versions of the benchmark, model-comparison, phase-fraction and
noise sweeps), and each braidfig subcommand consumes them and writes a
non-empty, parseable image.  Runs in well under a minute.
"""

import subprocess
import sys
import time

import pytest

from braidfig.render import FigureSpec, render

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def braidc(*args):
    proc = subprocess.run([sys.executable, "-m", "braidc.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


def braidfig(*args):
    return subprocess.run([sys.executable, "-m", "braidfig.cli", *args],
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def csvs(tmp_path_factory):
    root = tmp_path_factory.mktemp("csvs")
    paths = {}

    paths["bench"] = str(root / "bench.csv")
    braidc("bench", "--k", "3", "--lengths", "5,6,7", "--samples", "2",
           "--sweeps", "2000", "--seed", "6", "--csv", paths["bench"])

    paths["exhaustive"] = str(root / "exhaustive.csv")
    braidc("sweep", "--k", "3", "--lengths", "4,6,8", "--samples", "2",
           "--method", "exhaustive", "--seed", "8", "--csv",
           paths["exhaustive"])
    paths["mceska"] = str(root / "mceska.csv")
    braidc("sweep", "--k", "3", "--lengths", "30,150", "--samples", "2",
           "--method", "mceska", "--depth", "1", "--sweeps", "60",
           "--seed", "8", "--csv", paths["mceska"])

    paths["fib"] = str(root / "fib.csv")
    braidc("sweep", "--k", "3", "--lengths", "10,20", "--samples", "4",
           "--sweeps", "120", "--seed", "9", "--csv", paths["fib"])
    paths["ising"] = str(root / "ising.csv")
    braidc("sweep", "--k", "2", "--phase", "sqrt2pi", "--lengths", "10,20",
           "--samples", "4", "--sweeps", "120", "--seed", "9", "--csv",
           paths["ising"])

    paths["frac"] = str(root / "frac.csv")
    braidc("phase-frac", "--k", "2", "--phase", "sqrt2pi", "--c-values",
           "0,10,50", "--length", "20", "--samples", "4", "--sweeps", "80",
           "--seed", "10", "--csv", paths["frac"])

    paths["noise"] = str(root / "noise.csv")
    braidc("noise", "--k", "2", "--phase", "sqrt2pi", "--kind", "only",
           "--nu", "1e-5,1e-4,1e-3", "--lengths", "20", "--samples", "1",
           "--repetitions", "6", "--sweeps", "60", "--seed", "11",
           "--csv", paths["noise"])

    paths["total"] = str(root / "total.csv")
    braidc("noise", "--k", "2", "--phase", "sqrt2pi", "--kind", "total",
           "--nu", "0,1e-4,1e-3", "--lengths", "10,25", "--samples", "2",
           "--repetitions", "4", "--sweeps", "80", "--seed", "12",
           "--csv", paths["total"])
    return paths


def _check_image(path):
    data = open(path, "rb").read()
    assert len(data) > 1000
    assert data[:8] == PNG_SIGNATURE
    assert data.rstrip().endswith(b"IEND\xaeB`\x82")


def test_criterion_13_figure_commands(csvs, tmp_path):
    t0 = time.perf_counter()
    jobs = [
        ("timing", [csvs["bench"]]),
        ("convergence", [csvs["fib"]]),
        ("compiler-compare", [csvs["exhaustive"], csvs["mceska"]]),
        ("model-compare", [csvs["fib"], csvs["ising"]]),
        ("phase-frac", [csvs["frac"]]),
        ("noise-only", [csvs["noise"]]),
        ("total-error", [csvs["total"]]),
    ]
    for figure_id, inputs in jobs:
        out = tmp_path / f"{figure_id}.png"
        argv = [figure_id, "--out", str(out)]
        for path in inputs:
            argv += ["--csv", path]
        proc = braidfig(*argv)
        assert proc.returncode == 0, (figure_id, proc.stderr)
        _check_image(out)

    # the compiler-compare figure carries the log-log extrapolation line
    # through the exhaustive points
    result = render(FigureSpec(
        "compiler-compare", [csvs["exhaustive"], csvs["mceska"]],
        str(tmp_path / "cc-check.png")))
    assert result.fit is not None
    elapsed = time.perf_counter() - t0
    print(f"\n[PASS] criterion 13 (figure rendering): 7 figure commands, "
          f"all images non-empty PNG; extrapolation slope "
          f"{result.fit[0]:.3g} ({elapsed:.1f}s)")
    assert elapsed < 60.0


def test_schema_mismatch_exits_nonzero(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("model,k\nsu2_3,3\n", encoding="utf-8")
    out = tmp_path / "nope.png"
    proc = braidfig("timing", "--csv", str(bad), "--out", str(out))
    assert proc.returncode != 0
    assert not out.exists()


def test_header_only_exits_nonzero(tmp_path, csvs):
    from braidfig.render import CSV_HEADER
    empty = tmp_path / "empty.csv"
    empty.write_text(",".join(CSV_HEADER) + "\n", encoding="utf-8")
    out = tmp_path / "nope.png"
    proc = braidfig("convergence", "--csv", str(empty), "--out", str(out))
    assert proc.returncode != 0
    assert "no data rows" in proc.stderr
    assert not out.exists()
