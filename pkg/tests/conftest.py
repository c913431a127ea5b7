import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from stiefelspan.series import TruncatedSeries  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

TRUNCATIONS = (1, 2, 7, 64, 257)


@st.composite
def series(draw, truncation=None, unit=False):
    n = truncation if truncation is not None else draw(st.sampled_from(TRUNCATIONS))
    bits = draw(st.integers(min_value=0, max_value=(1 << n) - 1))
    if unit:
        bits |= 1
    return TruncatedSeries(n, bits)


@st.composite
def series_pair(draw, count=2, unit=False):
    n = draw(st.sampled_from(TRUNCATIONS))
    return tuple(draw(series(n, unit=unit)) for _ in range(count))


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Call with (criterion, passed, detail); lines are printed in the terminal summary."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(criterion, passed, detail=""):
        lines.append(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
