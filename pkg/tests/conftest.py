import time

import numpy as np
import pytest

from evdkit import load_embedded_wind, seasonal_adjust
from evdkit.montecarlo import StudyConfig, run_study


@pytest.fixture(scope="session")
def wind():
    """Embedded wind series after monthly-median adjustment."""
    return seasonal_adjust(load_embedded_wind(), "monthly_median")


@pytest.fixture(scope="session")
def wind_raw():
    return load_embedded_wind().values


@pytest.fixture(scope="session")
def desk_study_timed():
    """The 200 x 500 study over the eight generators and its wall time (about ten minutes)."""
    t0 = time.perf_counter()
    report = run_study(StudyConfig(n_replicates=200, n_per_sample=500, seed=2024))
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def desk_study(desk_study_timed):
    return desk_study_timed[0]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
