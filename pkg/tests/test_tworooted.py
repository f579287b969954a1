from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tuttekit.algebra import Poly, RationalFunction
from tuttekit.fixtures import complete, cycle, path, theta
from tuttekit.graph import Multigraph
from tuttekit.tutte import compute_z
from tuttekit.tworooted import (compose_graph, decompose, degree_report, effective_coupling,
                                substitute_subgraphs, theta_graph_poly, transmissivity)

from conftest import sym
from strategies import multigraphs

q = Poly.var("q")
v = [Poly.var(f"v_{i}") for i in range(6)]


@st.composite
def rooted(draw):
    g = draw(multigraphs(max_vertices=5, max_edges=7))
    if g.n < 2:
        g = Multigraph(2, g.edges)
    x = draw(st.integers(0, g.n - 1))
    y = draw(st.integers(0, g.n - 2))
    if y >= x:
        y += 1
    return sym(g), x, y


@given(rooted())
def test_decomposition_is_consistent(case):
    g, x, y = case
    assert decompose(g, x, y).consistent()


@given(rooted())
def test_roots_are_interchangeable(case):
    g, x, y = case
    a, b = decompose(g, x, y), decompose(g, y, x)
    assert a.z_conn == b.z_conn and a.z_disc == b.z_disc


@given(rooted())
def test_degree_bounds(case):
    g, x, y = case
    rep = degree_report(g, x, y)
    assert rep["ok"], rep


def test_single_edge_series_and_parallel():
    edge = sym(path(2))
    assert effective_coupling(decompose(edge, 0, 1)) == RationalFunction(v[0])
    series = sym(path(3))
    assert effective_coupling(decompose(series, 0, 2)) == \
        RationalFunction(v[0] * v[1], q + v[0] + v[1])
    par = sym(Multigraph.from_pairs(2, [(0, 1), (0, 1)]))
    assert effective_coupling(decompose(par, 0, 1)) == RationalFunction(v[0] + v[1] + v[0] * v[1])


def test_transmissivity_of_edge():
    t = transmissivity(decompose(sym(path(2)), 0, 1))
    assert t == RationalFunction(v[0], q + v[0])


def test_cycle_adjacent_roots():
    # C4 rooted at the ends of edge 0: edge 0 in parallel with a 3-path
    d = decompose(sym(cycle(4)), 0, 1)
    num3 = v[1] * v[2] * v[3]
    den3 = q * q + q * (v[1] + v[2] + v[3]) + v[1] * v[2] + v[1] * v[3] + v[2] * v[3]
    # parallel of v0 with the series value num3/den3
    expect = RationalFunction(v[0] * den3 + num3 + v[0] * num3, den3)
    assert effective_coupling(d) == expect


def test_disconnected_roots_have_zero_coupling():
    g = sym(Multigraph.from_pairs(3, [(0, 1)]))
    d = decompose(g, 0, 2)
    assert d.z_conn.is_zero()
    assert effective_coupling(d).is_zero()


def test_substitution_matches_direct_computation():
    h = sym(cycle(3))
    piece = sym(cycle(4))
    z, prefactor, composite = substitute_subgraphs(h, {0: (piece, 0, 2), 2: (sym(path(3)), 0, 2)})
    assert z == compute_z(composite)
    assert not prefactor.is_zero()


def test_compose_graph_ids_are_disjoint():
    h = sym(path(3))
    g, offsets = compose_graph(h, {0: (sym(cycle(3)), 0, 1), 1: (sym(cycle(3)), 0, 1)})
    ids = g.edge_ids()
    assert len(ids) == len(set(ids)) == 6
    assert g.n == 5


@pytest.mark.parametrize("s,p", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_theta_closed_form(s, p):
    g = theta(s, p)
    for vv in (-1, 2, Fraction(1, 3)):
        direct = compute_z(g, {e.id: vv for e in g.edges}).to_laurent()
        assert theta_graph_poly(s, p, v=vv).to_laurent("q") == direct


def test_theta_numeric_value():
    # K2 with p parallel edges at q = 2, v = 1: 2^2 + 2 * (2^p - 1)
    assert theta_graph_poly(1, 3, q=2, v=1) == 4 + 2 * 7


def test_roots_must_differ():
    with pytest.raises(ValueError):
        decompose(sym(complete(3)), 1, 1)
