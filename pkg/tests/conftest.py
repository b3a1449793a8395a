import hypothesis.strategies as st
import pytest
from hypothesis import settings

from roofcrystal.sets import canonicalize, from_partition

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

EXAMPLE = canonicalize(5, 0, [3, 4, 7, 10, 12, 14, 17, 18, 23, 27, 32, 33, 35, 37])


@pytest.fixture
def example():
    return EXAMPLE


@st.composite
def bounded_sets(draw, n=None, m=None, max_parts=8):
    """n-bounded sets built from partitions whose parts step by less than n."""
    n = draw(st.integers(2, 5)) if n is None else n
    m = draw(st.integers(-3, 3)) if m is None else m
    steps = draw(st.lists(st.integers(0, n - 1), max_size=max_parts))
    parts, last = [], 0
    for s in steps:
        last += s
        if last == 0:
            continue
        parts.append(last)
    return from_partition(parts[::-1], m, n)


@st.composite
def any_sets(draw, n=None):
    """Arbitrary sets (not necessarily bounded) with a small window."""
    n = draw(st.integers(2, 5)) if n is None else n
    tail = draw(st.integers(-4, 4))
    above = draw(st.sets(st.integers(tail + 2, tail + 14), max_size=7))
    return canonicalize(n, tail, above)


# -- acceptance summary: one pass/fail line per criterion -----------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[number] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
