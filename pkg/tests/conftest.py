import sys
import numpy as np
import pytest
from hypothesis import strategies as st

from nlsgraph import build_graph


def random_graph(rng, n, mu_range=(0.1, 10.0), w_range=(0.1, 10.0), extra=None):
    """Connected random graph: a random spanning tree plus extra edges."""
    ids = [f"v{k}" for k in range(n)]
    mu = rng.uniform(*mu_range, n)
    pairs = set()
    for k in range(1, n):
        pairs.add((int(rng.integers(k)), k))
    extra = n if extra is None else extra
    for _ in range(extra):
        a, b = rng.choice(n, 2, replace=False) if n > 1 else (0, 0)
        if a != b:
            pairs.add((min(a, b), max(a, b)))
    edges = [(ids[a], ids[b], float(rng.uniform(*w_range))) for a, b in sorted(pairs)]
    return build_graph(dict(zip(ids, mu)), edges)


@st.composite
def graphs(draw, min_n=2, max_n=12):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    return random_graph(np.random.default_rng(seed), n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def path2():
    return build_graph({"a": 1.0, "b": 1.0}, [("a", "b", 1.0)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
