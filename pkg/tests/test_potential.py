import numpy as np
import pytest

from nlsgraph import (IntegerLattice, PotentialProblem, PowerPotential, SolverOptions,
                      ball_subgraph, build_graph, check_c3, check_growth, jphi,
                      maximize_constrained, truncation_study)
from nlsgraph.energy import Jcal, constraint_mass, lambda1_upper_bound
from nlsgraph.errors import IsolatedOrigin, NonPositivePotential
from nlsgraph.potential import phi_test

S = 1 / np.sqrt(2)


def lattice_problem(r=32, m=10.0):
    lat = IntegerLattice(1, PowerPotential(1.0, 1.0, 1.0))
    return ball_subgraph(lat, "0", r), PotentialProblem(3, m, "0", generator=lat)


def origin_graph(h0):
    g = build_graph({"o": 1.0, "l": 1.0, "r": 1.0}, [("o", "l", 1.0), ("o", "r", 1.0)])
    return g, np.array([h0, 1.0, 1.0])


def test_c3_examples():
    g, h = origin_graph(0.1)
    c = check_c3(g, h, "o", 3, 1.0)
    assert c.holds and c.rhs == pytest.approx(1 / 9)
    g, h = origin_graph(0.2)
    assert not check_c3(g, h, "o", 3, 1.0).holds
    lat, _ = lattice_problem(8)
    assert check_c3(lat, lat.potential, "0", 3, 10.0).holds
    assert not check_c3(lat, lat.potential, "0", 3, 1.0).holds
    assert not check_c3(lat, lat.potential, "0", 3, 9.0).holds


def test_c3_matches_sign_of_jphi():
    g, h = origin_graph(1.0)
    for m in np.geomspace(0.5, 50, 23):
        assert check_c3(g, h, "o", 3, m).holds == (jphi(g, h, "o", 3, m) > 0)


def test_phi_examples():
    g, h = origin_graph(0.1)
    phi = phi_test(g, h, "o")
    assert phi[0] == pytest.approx(1 / np.sqrt(0.1))
    assert phi[1] == phi[2] == 0
    assert constraint_mass(g, phi, h) == pytest.approx(1.0, abs=1e-14)
    g, h = origin_graph(1.0)
    assert phi_test(g, h, "o")[0] == 1.0


def test_jphi_examples():
    g, h = origin_graph(0.05)
    assert jphi(g, h, "o", 3) == pytest.approx(0.05 ** -1.5 / 3 - 20, rel=1e-12)
    assert jphi(g, h, "o", 3) == pytest.approx(9.814, abs=1e-3)
    g, h = origin_graph(1.0)
    assert jphi(g, h, "o", 3) == pytest.approx(-2 / 3)
    for m in (0.5, 3.0, 40.0):
        direct = Jcal(g, np.sqrt(m) * phi_test(g, h, "o"), 3)
        assert jphi(g, h, "o", 3, m) == pytest.approx(direct, rel=1e-12)


def test_isolated_origin():
    g = build_graph({"o": 1.0, "a": 1.0, "b": 1.0}, [("a", "b", 1.0)])
    with pytest.raises(IsolatedOrigin):
        check_c3(g, np.ones(3), "o", 3, 1.0)
    with pytest.raises(IsolatedOrigin):
        jphi(g, np.ones(3), "o", 3)


def test_two_vertex_maximizer(path2):
    sol = maximize_constrained(path2, PotentialProblem(3, 1.0, "a", h=np.ones(2)))
    np.testing.assert_allclose(sol.u, [S, S], atol=1e-10)
    assert sol.energy == pytest.approx(np.sqrt(2) / 6, abs=1e-12)
    assert sol.lam == pytest.approx(S, abs=1e-10)


def test_lattice_maximizer():
    g, prob = lattice_problem()
    sol = maximize_constrained(g, prob)
    m = prob.m
    assert sol.converged and np.all(sol.u > 0)
    assert abs(constraint_mass(g, sol.u, g.potential) - m) <= 1e-12 * m
    assert sol.energy > 0
    assert sol.lam >= 2 * sol.energy / m > 0
    assert sol.energy >= jphi(g, g.potential, "0", 3, m)
    assert np.argmax(sol.u) == 0


def test_unit_mass_within_bound():
    g, prob = lattice_problem(16, 1.0)
    sol = maximize_constrained(g, prob)
    assert sol.energy <= lambda1_upper_bound(g, g.potential, 3)


def test_ascent_trace():
    g, prob = lattice_problem(16)
    sol = maximize_constrained(g, prob, SolverOptions(trace=True, restarts=2))
    tr = np.array(sol.trace)
    assert np.all(np.diff(tr) >= -1e-12 * np.maximum(1.0, np.abs(tr[1:])))


def test_rescaled_and_direct_agree():
    g, prob = lattice_problem(16)
    a = maximize_constrained(g, prob)
    b = maximize_constrained(g, prob, SolverOptions(variable="direct"))
    assert a.energy == pytest.approx(b.energy, rel=1e-10)


def test_missing_or_bad_potential(path2):
    with pytest.raises(NonPositivePotential):
        maximize_constrained(path2, PotentialProblem(3, 1.0, "a"))
    with pytest.raises(NonPositivePotential):
        maximize_constrained(path2, PotentialProblem(3, 1.0, "a", h=[1.0, 0.0]))


def test_growth():
    g, _ = lattice_problem(8)
    assert check_growth(g, g.potential, "0")
    assert not check_growth(g, np.ones(g.n), "0")


def test_truncation_deltas_decrease():
    _, prob = lattice_problem()
    rep = truncation_study(prob, [8, 16, 32], digits=60)
    assert rep.deltas_decreasing
    assert rep.c3.holds and rep.growth_ok and not rep.notes
    assert rep.center_deltas[-1] < 1e-20


def test_truncation_against_larger_radius():
    _, prob = lattice_problem()
    rep = truncation_study(prob, [8, 64])
    small, big = rep.solutions
    gs, gb = rep.graphs
    inner = [v for v, d in zip(gs.vertices, gs.distances("0")) if d <= 4]
    diff = max(abs(small.u[gs.idx(v)] - big.u[gb.idx(v)]) for v in inner)
    assert diff < 1e-6


def test_truncation_validation():
    _, prob = lattice_problem()
    with pytest.raises(ValueError):
        truncation_study(prob, [8, 8])
    with pytest.raises(ValueError):
        truncation_study(PotentialProblem(3, 10.0, "0", h=np.ones(3)), [4, 8])


def test_truncation_when_c3_fails():
    _, prob = lattice_problem(m=1.0)
    rep = truncation_study(prob, [4, 8])
    assert not rep.c3.holds
    assert rep.notes
