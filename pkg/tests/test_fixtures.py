import numpy as np
import pytest

from nlsgraph import load_fixture, minimize
from nlsgraph.errors import UnknownFixture
from nlsgraph.fixtures import REFERENCE_LIMIT, fixture_names


def test_six_vertex_fixtures():
    g, notes = load_fixture("g6-table1")
    assert g.n == 6 and g.volume == 57 and g.connected and notes
    u, _ = load_fixture("g6-uniform")
    assert u.n == 6 and u.volume == 6
    assert u.edges == g.edges


def test_paths_and_lattices():
    assert load_fixture("path2")[0].n == 2
    assert load_fixture("path3")[0].n == 3
    assert load_fixture("lattice1d(3)")[0].n == 7
    assert load_fixture("lattice2d(2)")[0].n == 13


@pytest.mark.parametrize("name", ["nosuch", "lattice3d(2)", "lattice1d(x)", ""])
def test_unknown(name):
    with pytest.raises(UnknownFixture):
        load_fixture(name)
    with pytest.raises(KeyError):
        load_fixture(name)


def test_names_listed():
    assert "g6-table1" in fixture_names()


def test_reference_limit_is_not_a_limit_solution():
    # the reference large-mass values equal 1/sqrt(6 mu) and are not constant
    # on any support, so they cannot solve the limit equation
    g, _ = load_fixture("g6-table1")
    np.testing.assert_allclose(REFERENCE_LIMIT, 1 / np.sqrt(6 * g.mu), atol=5e-5)
    w = np.array(REFERENCE_LIMIT)
    res = np.abs(w**2 - np.dot(g.mu, w**3) * w)
    assert res.max() > 1e-2


def test_large_mass_solution_concentrates():
    g, _ = load_fixture("g6-table1")
    sol = minimize(g, 3, 1e12)
    v = sol.rescaled
    assert v.max() == pytest.approx(1.0, abs=1e-4)
