"""
Larger enumeration, discovery and compilation runs. These take minutes and are
disabled by default; set ENABLE_PERF=1 to run them.
"""

import os
import time

import pytest

from phantomqec.compile import compile_two_blocks
from phantomqec.config import QecConfig
from phantomqec.enumerate import enumerate_all, filter_phantom
from phantomqec.enums import SolveStatus
from phantomqec.f2linalg import random_invertible
from phantomqec.sat import minimal_n
from phantomqec.solver import SolverHandle


perf_enabled = os.getenv("ENABLE_PERF", "0") == "1"


def _row(frame, k, dx, dz):
    match = frame[(frame["k"] == k) & (frame["dx"] == dx) & (frame["dz"] == dz)]
    assert len(match) == 1
    return match.iloc[0]


@pytest.mark.performance
@pytest.mark.skipif(not perf_enabled, reason="Performance tests disabled by default. Set ENABLE_PERF=1 to run.")
def test_enumeration_counts_n6():
    db = enumerate_all(6, k_min=2)
    counts = db.counts(min_distance=2)
    assert _row(counts, 2, 2, 2)["M"] == 15
    assert counts[counts["k"] == 3]["M"].sum() == 2
    assert counts[counts["k"] == 4]["M"].sum() == 1

    t0 = time.time()
    row = _row(filter_phantom(db), 2, 2, 2)
    dt = time.time() - t0
    assert (row["M"], row["K1"], row["K2"]) == (15, 15, 9)
    assert dt < 600.0


@pytest.mark.performance
@pytest.mark.skipif(not perf_enabled, reason="Performance tests disabled by default. Set ENABLE_PERF=1 to run.")
def test_enumeration_counts_n7():
    db = enumerate_all(7, k_min=2)
    counts = db.counts(min_distance=2)
    assert _row(counts, 2, 2, 2)["M"] == 59
    assert _row(counts, 2, 2, 3)["M"] == 2
    assert _row(counts, 3, 2, 2)["M"] == 16

    row = _row(filter_phantom(db), 3, 2, 3)
    assert (row["M"], row["K3"]) == (1, 1)


@pytest.mark.performance
@pytest.mark.skipif(not perf_enabled, reason="Performance tests disabled by default. Set ENABLE_PERF=1 to run.")
def test_minimal_n_k3_phantom():
    config = QecConfig()
    handle = SolverHandle.from_config(config)
    general = minimal_n(3, 2, n_max=6, handle=handle, config=config)
    assert general[-1].n == 6 and general[-1].status is SolveStatus.SAT

    phantom = minimal_n(3, 2, phantom=True, n_max=7, handle=handle, config=config)
    assert [row.status for row in phantom if row.n == 6] == [SolveStatus.UNSAT]
    assert phantom[-1].n == 7 and phantom[-1].status is SolveStatus.SAT


@pytest.mark.performance
@pytest.mark.skipif(not perf_enabled, reason="Performance tests disabled by default. Set ENABLE_PERF=1 to run.")
def test_two_block_compile_speed(rng):
    k = 4
    t0 = time.time()
    for _ in range(200):
        x = random_invertible(2 * k, rng)
        schedule = compile_two_blocks(x, k)
        assert schedule.depth <= 4
        assert schedule.matrix() == x
    assert time.time() - t0 < 60.0
