import runpy
from pathlib import Path

import pytest

from powergraph import _accel

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_benchmark_runs_small(capsys):
    runpy.run_path(str(BENCH))["main"](["--max-order", "24", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "membership" in out and "dinic" in out
