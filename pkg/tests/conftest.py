import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from zigzag_ideals.linalg import GF2, GF5, QQ, Matrix
from zigzag_ideals.quiver import QuiverWindow

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

FIELDS = [GF2, GF5, QQ]

fields = st.sampled_from(FIELDS)


@st.composite
def windows(draw, max_size=6, min_size=1, lo=None):
    n = draw(st.integers(min_size, max_size))
    start = draw(st.integers(-3, 3)) if lo is None else lo
    word = "".join(draw(st.lists(st.sampled_from("RL"), min_size=n - 1, max_size=n - 1)))
    return QuiverWindow(start, start + n - 1, word)


@st.composite
def matrices(draw, field=None, max_rows=5, max_cols=5):
    f = draw(fields) if field is None else field
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    lim = 4 if f is QQ else f.p - 1
    entries = draw(st.lists(st.integers(-lim, lim), min_size=r * c, max_size=r * c))
    return Matrix(f, f.array(entries, (r, c)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
