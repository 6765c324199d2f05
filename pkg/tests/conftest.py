import numpy as np
import pytest
from hypothesis import strategies as st

from mggs.groups import construct, full_space, gupta_sidki
from mggs.tree import Portrait, size


def random_portrait(p, depth, rng, translations=False):
    n = size(p, depth)
    u = np.ones(n, dtype=np.int64) if translations else rng.integers(1, p, n)
    return Portrait(p, depth, u, rng.integers(0, p, n))


@st.composite
def portraits(draw, p=3, depth=3, count=1):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    out = [random_portrait(p, depth, rng) for _ in range(count)]
    return out[0] if count == 1 else out


# groups used across the suite; the p=3 and p=5 ones stay within BFS budgets
TEST_GROUPS = {
    "gs3": lambda: gupta_sidki(3),
    "p3_10": lambda: construct(3, [[1, 0]]),
    "full3": lambda: full_space(3),
    "sym5": lambda: construct(5, [[1, 2, 2, 1]]),
    "sym5b": lambda: construct(5, [[1, 4, 4, 1]]),
    "reg5": lambda: construct(5, [[1, 2, 3, 4]]),
    "rank2_5": lambda: construct(5, [[1, 2, 3, 4], [0, 1, 0, 0]]),
}


@pytest.fixture(params=sorted(TEST_GROUPS))
def group(request):
    return TEST_GROUPS[request.param]()


# acceptance criteria report one line each at the end of the run
CRITERIA: dict[int, tuple[bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, elapsed, note = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f}s)  {note}")
