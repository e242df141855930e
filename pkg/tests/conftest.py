import csv
import time
from pathlib import Path

import pytest

from hopf_tensegrity import group, linking, spectral, tensegrity, trajectory

DATA = Path(__file__).parent / "data"

_CACHED = (
    group.build_group_and_rep,
    group.stress_matrix,
    spectral.spectral_curve,
    tensegrity.null_vector_poly,
    linking.intersection_formulas,
    linking.derive_intersection_formulas,
    trajectory.build_curves,
)

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title, limit): acceptance criterion with a time limit in seconds")


def clear_caches():
    for fn in _CACHED:
        fn.cache_clear()


@pytest.fixture
def cold():
    """Start from empty caches so timings include every derivation."""
    clear_caches()
    start = time.perf_counter()
    yield lambda: time.perf_counter() - start


@pytest.fixture(scope="session")
def trajectory_grid():
    with open(DATA / "trajectory_grid.csv") as fh:
        return [(int(r["k"]), float(r["r1"]), float(r["r2"])) for r in csv.DictReader(fh)]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and rep.passed:
        return
    n, title, limit = mark.args
    prev = _criteria.get(n)
    if prev is None or prev[0] == "PASS":
        status = "PASS" if rep.passed else "FAIL"
        _criteria[n] = (status, title, limit, rep.duration if rep.when == "call" else 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title, limit, dur = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {title}  ({dur:.2f} s, limit {limit} s)")
