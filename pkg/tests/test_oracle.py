import numpy as np
import pytest

from nlsgraph import GridSpec, ProblemSpec, brute_force_extremum, build_graph, fd_gradient_check, minimize
from nlsgraph.errors import TooManyVertices

from conftest import random_graph

S = 1 / np.sqrt(2)


def test_two_vertex_min_and_max(path2):
    lo = brute_force_extremum(path2, ProblemSpec(3, 1.0), "min")
    assert lo.energy == pytest.approx(-np.sqrt(2) / 6, abs=1e-12)
    np.testing.assert_allclose(lo.u, [S, S], atol=1e-7)
    hi = brute_force_extremum(path2, ProblemSpec(3, 1.0, h=np.ones(2)), "max")
    assert hi.energy == pytest.approx(np.sqrt(2) / 6, abs=1e-12)


def test_oracle_matches_solver_unequal_measure():
    g = build_graph({"a": 1.0, "b": 4.0}, [("a", "b", 1.0)])
    ref = brute_force_extremum(g, ProblemSpec(3, 1.0))
    sol = minimize(g, 3, 1.0)
    assert abs(ref.energy - sol.energy) <= 1e-6
    assert np.max(np.abs(ref.u - sol.u)) <= 1e-4


@pytest.mark.parametrize("p", [2.5, 3.0, 4.0])
@pytest.mark.parametrize("m", [0.5, 20.0])
def test_oracle_three_vertices(p, m):
    g = build_graph({"a": 0.5, "b": 2.0, "c": 7.0}, [("a", "b", 1.5), ("b", "c", 0.3)])
    ref = brute_force_extremum(g, ProblemSpec(p, m))
    sol = minimize(g, p, m)
    assert abs(ref.energy - sol.energy) <= 1e-6
    assert np.max(np.abs(ref.u - sol.u)) <= 1e-4


def test_oracle_rejections(path2):
    g4 = build_graph({k: 1.0 for k in "abcd"}, [("a", "b", 1), ("b", "c", 1), ("c", "d", 1)])
    with pytest.raises(TooManyVertices):
        brute_force_extremum(g4, ProblemSpec(3, 1.0))
    with pytest.raises(ValueError):
        brute_force_extremum(path2, ProblemSpec(3, 1.0), "sideways")
    with pytest.raises(ValueError):
        brute_force_extremum(path2, ProblemSpec(3, 1.0), grid=GridSpec(resolution=500))
    with pytest.raises(ValueError):
        GridSpec(resolution=5)


def test_fd_gradient(rng):
    g = random_graph(rng, 10)
    u = rng.normal(size=g.n)
    assert fd_gradient_check(g, u, 3.0) < 1e-6
    assert fd_gradient_check(g, np.zeros(g.n), 3.0) == 0.0
    with pytest.raises(ValueError):
        fd_gradient_check(g, u, 3.0, step=0.0)
