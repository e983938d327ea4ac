import asyncio

import numpy as np
import pytest

from app.jobs.benchmark_sweep import run_benchmark, run_instance
from app.schemas.config.run_config_schema import RunConfig

CONFIG = RunConfig(max_iter=3)


@pytest.mark.sdp
def test_instance_is_reproducible():
    a = run_instance(4, 7, (5, 7), (2, 3), CONFIG)
    b = run_instance(4, 7, (5, 7), (2, 3), CONFIG)
    assert (a.n, a.r, a.initial_h2) == (b.n, b.r, b.initial_h2)
    assert 5 <= a.n <= 7 and 2 <= a.r <= 3


@pytest.mark.sdp
@pytest.mark.slow
def test_sweep_never_worsens_projection():
    rows = asyncio.run(run_benchmark(4, 1, (5, 8), (2, 4), CONFIG))
    assert [row.instance for row in rows] == [0, 1, 2, 3]
    solved = [row for row in rows if row.status != "error"]
    assert solved
    for row in solved:
        assert row.final_h2 <= row.initial_h2
        assert np.isfinite(row.improvement_pct) and row.improvement_pct >= 0


@pytest.mark.sdp
@pytest.mark.slow
def test_optimization_improves_most_random_reductions():
    rows = asyncio.run(run_benchmark(20, 2024, (6, 10), (2, 4), RunConfig(max_iter=50)))
    solved = [row for row in rows if row.status != "error"]
    assert len(solved) >= 10
    improved = [row for row in solved if row.improvement_pct > 1.0]
    assert 2 * len(improved) >= len(solved)
