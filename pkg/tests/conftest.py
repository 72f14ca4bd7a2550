import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from finitop import kernels
from finitop.corpus import all_posets, named_spaces, random_poset

# Timing varies with backend and machine load; correctness is what is under test.
settings.register_profile("finitop", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("finitop")

BACKENDS = ["python"] + (["cython"] if kernels.COMPILED_AVAILABLE else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    with kernels.using_backend(request.param):
        yield request.param


@pytest.fixture(scope="session")
def spaces():
    return named_spaces()


def corpus(max_n, min_n=1):
    return all_posets(max_n, min_n)


@st.composite
def posets(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_poset(random.Random(seed), n)


@st.composite
def poset_and_subset(draw, min_n=1, max_n=6, nonempty=False):
    p = draw(posets(min_n, max_n))
    lo = 1 if nonempty else 0
    mask = draw(st.integers(lo, p.full)) if p.n else 0
    return p, mask


# acceptance summary

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when == "teardown" and report.passed:
        return
    n = marker.args[0]
    if report.failed or (report.when == "call" and report.skipped):
        _CRITERIA[n] = False
    elif report.when == "call":
        _CRITERIA.setdefault(n, True)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:>2} ... {'PASS' if _CRITERIA[n] else 'FAIL'}")
