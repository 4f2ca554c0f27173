from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from drincert.algebra import GF, Poly

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def const(F, k: int) -> Poly:
    return Poly(F, (F.from_int(k),))


@pytest.fixture
def F7():
    return GF(7)


@pytest.fixture
def T7(F7):
    return Poly.T(F7)


# -- acceptance criteria: one PASS/FAIL line per criterion in the terminal summary ------

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, label = mark.args
    ok = rep.passed
    prev = _CRITERIA.get(n, (label, True))
    if rep.when == "call" or not ok:
        _CRITERIA[n] = (label, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        label, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {label}: {'PASS' if ok else 'FAIL'}")
