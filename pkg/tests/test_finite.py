import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nlsgraph import (ProblemSpec, SolverOptions, build_graph, constant_candidate, load_fixture,
                      minimize, minimize_normalized)
from nlsgraph.energy import J, constraint_mass, el_residual, lagrange_multiplier
from nlsgraph.errors import DisconnectedGraph, InvalidExponent, NonPositiveMass, NotConverged
from nlsgraph.fixtures import G6_MEASURES, REFERENCE_ROWS

from conftest import graphs

S = 1 / np.sqrt(2)


def test_two_vertex_closed_form(path2):
    sol = minimize(path2, 3, 1.0)
    assert sol.converged
    np.testing.assert_allclose(sol.u, [S, S], atol=1e-10)
    assert sol.lam == pytest.approx(S, abs=1e-10)
    assert sol.energy == pytest.approx(-np.sqrt(2) / 6, abs=1e-12)


def test_six_vertex_small_mass_is_constant():
    g, _ = load_fixture("g6-table1")
    sol = minimize(g, 3, 0.1)
    np.testing.assert_allclose(sol.u, np.sqrt(0.1 / 57), atol=1e-10)
    np.testing.assert_allclose(sol.u, REFERENCE_ROWS[0.1], atol=5e-5)


def test_rejections(path2):
    with pytest.raises(InvalidExponent):
        minimize(path2, 2, 1.0)
    with pytest.raises(NonPositiveMass):
        minimize(path2, 3, -1.0)
    with pytest.raises(DisconnectedGraph):
        minimize(build_graph({"a": 1, "b": 1}), 3, 1.0)
    with pytest.raises(ValueError):
        minimize_normalized(path2, ProblemSpec(3, 1.0, h=[1.0, 1.0]))


def test_constant_candidate():
    g, _ = load_fixture("g6-table1")
    c = constant_candidate(g, 3, 0.1)
    assert c.u[0] == pytest.approx(0.041885, abs=1e-6)
    u, _ = load_fixture("g6-uniform")
    assert constant_candidate(u, 3, 1.0).u[0] == pytest.approx(0.4082, abs=1e-4)
    with pytest.raises(NonPositiveMass):
        constant_candidate(g, 3, 0.0)


def test_single_vertex():
    g = build_graph({"a": 2.0})
    sol = minimize(g, 3, 8.0)
    assert sol.u[0] == pytest.approx(2.0)
    assert sol.lam == pytest.approx(2.0)


def test_not_converged_carries_best():
    g, _ = load_fixture("g6-table1")
    with pytest.raises(NotConverged) as info:
        minimize(g, 3, 10.0, max_iter=2, restarts=2, initial=np.arange(1.0, 7.0))
    best = info.value.best
    assert best is not None and not best.converged
    assert best.mass == pytest.approx(10.0, rel=1e-12)


def test_restarts_deterministic():
    g, _ = load_fixture("g6-table1")
    a = minimize(g, 3, 10.0, seed=7)
    b = minimize(g, 3, 10.0, seed=7)
    np.testing.assert_array_equal(a.u, b.u)
    assert a.restart == b.restart


def test_global_minimizer_concentrates_on_x6():
    g, _ = load_fixture("g6-table1")
    sol = minimize(g, 3, 90.0)
    assert g.vertices[int(np.argmax(sol.u))] == "x6"
    assert sol.energy < constant_candidate(g, 3, 10.0).energy


@pytest.mark.parametrize("m", [10.0, 100.0])
def test_reference_rows_are_a_local_branch(m):
    # the reference rows solve the equation with nonlinearity p*u^(p-1); for
    # p = 3 that is u_ref(m) = u(9m)/3 in the convention used here
    g, _ = load_fixture("g6-table1")
    row = np.array(REFERENCE_ROWS[m])
    sol = minimize(g, 3, 9 * m, initial=3 * row, restarts=1)
    np.testing.assert_allclose(sol.u / 3, row, atol=5e-4)
    assert g.vertices[int(np.argmax(sol.u))] == "x4"
    glob = minimize(g, 3, 9 * m)
    assert glob.energy < sol.energy


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=10), st.floats(2.2, 5.0), st.floats(0.05, 50.0))
def test_solution_invariants(g, p, m):
    sol = minimize(g, p, m, restarts=3, trace=True)
    assert sol.converged and np.all(sol.u > 0)
    assert abs(constraint_mass(g, sol.u) - m) <= 1e-12 * m
    assert sol.energy <= constant_candidate(g, p, m).energy + 1e-12 * max(1.0, abs(sol.energy))
    assert sol.energy == pytest.approx(J(g, sol.u, p), rel=1e-9, abs=1e-12)
    assert sol.lam == pytest.approx(lagrange_multiplier(g, sol.u, p, m), rel=1e-9, abs=1e-12)
    scale = max(1.0, np.max(sol.u) ** (p - 1), sol.lam * np.max(sol.u))
    assert el_residual(g, sol.u, sol.lam, p) <= 1e-8 * scale
    tr = np.array(sol.trace)
    assert np.all(np.diff(tr) <= 1e-12 * np.maximum(1.0, np.abs(tr[1:])))


def test_direct_variable_agrees():
    g, _ = load_fixture("g6-table1")
    a = minimize(g, 3, 5.0)
    b = minimize(g, 3, 5.0, variable="direct")
    assert a.energy == pytest.approx(b.energy, rel=1e-10)
    np.testing.assert_allclose(a.u, b.u, atol=1e-7)


def test_options_validation():
    with pytest.raises(ValueError):
        SolverOptions(tol=0)
    with pytest.raises(ValueError):
        SolverOptions(restarts=0)
    with pytest.raises(ValueError):
        SolverOptions(variable="other")


def test_measures_fixture_matches():
    g, _ = load_fixture("g6-table1")
    np.testing.assert_array_equal(g.mu, G6_MEASURES)
