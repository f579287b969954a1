from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tuttekit.algebra import CapExceeded, LaurentPoly, MultiAffinePoly, Poly
from tuttekit.fixtures import complete, cycle, complete_embedded_k4, cycle_embedded, path, wheel
from tuttekit.graph import Multigraph, Symbol, contract_edge, delete_edge
from tuttekit.kirchhoff import matrix_tree
from tuttekit.tutte import (alpha_limit_check, chromatic_poly, compute_z, connected_spanning_poly,
                            duality_check,
                            flow_poly, flow_poly_multivariate, gamma_flow_oracle,
                            potts_coloring_oracle, reliability_poly, spanning_tree_poly,
                            tutte_xy, z_delete_contract, z_subset_expansion, z_tilde,
                            z_uniform_bivariate)

from conftest import sym
from strategies import multigraphs

Q = MultiAffinePoly.q_power(1)


def falling(n):
    p = LaurentPoly.constant(1)
    for i in range(n):
        p = p * LaurentPoly({1: 1, 0: -i})
    return p


@given(multigraphs(max_vertices=5, max_edges=8))
def test_delete_contract_matches_subset_expansion(g):
    gs = sym(g)
    assert z_delete_contract(gs).z == z_subset_expansion(gs).z


@given(multigraphs(max_vertices=5, max_edges=7))
def test_memo_does_not_change_result(g):
    gs = sym(g)
    assert z_delete_contract(gs, use_memo=False).z == z_delete_contract(gs).z


@given(multigraphs(max_vertices=5, max_edges=7))
def test_deletion_contraction_identity(g):
    gs = sym(g)
    z = compute_z(gs)
    for e in gs.edges:
        ve = MultiAffinePoly.variable(e.id)
        assert z == compute_z(delete_edge(gs, e.id)) + ve * compute_z(contract_edge(gs, e.id))


@given(multigraphs(max_vertices=5, max_edges=7))
def test_degree_and_low_degree_in_q(g):
    res = z_delete_contract(sym(g))
    assert res.check_invariants(g)


@given(multigraphs(max_vertices=5, max_edges=7))
def test_q_equals_one_gives_product(g):
    z = compute_z(sym(g)).evaluate({}, q=1)
    expect = MultiAffinePoly.one()
    for e in g.edges:
        expect = expect * (MultiAffinePoly.variable(e.id) + 1)
    assert z == expect


@settings(max_examples=25)
@given(multigraphs(max_vertices=4, max_edges=6), st.integers(1, 3))
def test_potts_sum_matches(g, q):
    z = compute_z(sym(g)).evaluate({}, q=q)
    assert z == potts_coloring_oracle(sym(g), q)


@settings(max_examples=25)
@given(multigraphs(max_vertices=4, max_edges=5), st.sampled_from([(2,), (3,), (4,), (2, 2)]))
def test_flow_enumeration(g, group):
    order = 1
    for k in group:
        order *= k
    lhs = gamma_flow_oracle(g, group)
    rhs = flow_poly_multivariate(g).evaluate({}, q=order)
    assert lhs == rhs


def test_tree_and_cycle_closed_forms():
    g = sym(path(4))
    expect = Q
    for e in g.edges:
        expect = expect * (Q + MultiAffinePoly.variable(e.id))
    assert compute_z(g) == expect
    c = sym(cycle(5))
    prod_qv, prod_v = MultiAffinePoly.one(), MultiAffinePoly.one()
    for e in c.edges:
        prod_qv = prod_qv * (Q + MultiAffinePoly.variable(e.id))
        prod_v = prod_v * MultiAffinePoly.variable(e.id)
    assert compute_z(c) == prod_qv + prod_v.shift_q(1) - prod_v


@pytest.mark.parametrize("n", range(1, 7))
def test_chromatic_of_complete_graph(n):
    assert chromatic_poly(complete(n)) == falling(n)


def test_chromatic_cycle_and_loop():
    q = LaurentPoly.monomial(1)
    assert chromatic_poly(cycle(4)) == (q - 1) ** 4 + (q - 1)
    assert chromatic_poly(Multigraph.from_pairs(1, [(0, 0)])).is_zero()


def test_flow_of_k4_and_theta():
    q = LaurentPoly.monomial(1)
    assert flow_poly(complete(4)) == (q - 1) * (q - 2) * (q - 3)
    assert flow_poly(cycle(5)) == q - 1


def test_tutte_polynomial_of_k4():
    x, y = Poly.var("x"), Poly.var("y")
    expect = x ** 3 + y ** 3 + 3 * x ** 2 + 4 * x * y + 3 * y ** 2 + 2 * x + 2 * y
    assert tutte_xy(complete(4)) == expect


@given(multigraphs(max_vertices=5, max_edges=6, loops=True))
def test_tutte_special_values(g):
    t = tutte_xy(g)
    assert t.evaluate({"x": 2, "y": 2}) == 2 ** g.num_edges
    if g.is_connected():
        trees = matrix_tree(g).evaluate({e.id: 1 for e in g.edges})
        if isinstance(trees, MultiAffinePoly):
            trees = trees.constant_value()
        assert t.evaluate({"x": 1, "y": 1}) == trees


def test_uniform_bivariate_matches_specialised():
    g = complete(4)
    biv = z_uniform_bivariate(g)
    for v in (-1, Fraction(1, 3), 2):
        lp = compute_z(g, {e.id: v for e in g.edges}).to_laurent()
        assert biv.substitute({"v": v}).to_laurent("q") == lp


def test_reliability():
    p = LaurentPoly.monomial(1, var="p")
    assert reliability_poly(cycle(4)) == -3 * p ** 4 + 4 * p ** 3
    assert reliability_poly(path(3)) == p ** 2
    assert reliability_poly(cycle(4), 1) == 1
    assert reliability_poly(cycle(4), 0) == 0
    assert reliability_poly(cycle(3), Fraction(1, 2)) == Fraction(1, 2)


@given(multigraphs(max_vertices=4, max_edges=6, loops=False), st.fractions(0, 1, max_denominator=10))
def test_reliability_matches_enumeration(g, p):
    k0 = g.components()
    total = Fraction(0)
    m = g.num_edges
    for mask in range(1 << m):
        sub = Multigraph(g.n, tuple(e for e in g.edges if (mask >> e.id) & 1))
        if sub.components() == k0:
            r = bin(mask).count("1")
            total += p ** r * (1 - p) ** (m - r)
    assert reliability_poly(g, p) == total


@pytest.mark.parametrize("make", [lambda: cycle_embedded(4), complete_embedded_k4,
                                  lambda: wheel(4, True), lambda: wheel(5, True)])
def test_planar_duality(make):
    g, rot = make()
    checks = duality_check(g, rot)
    assert checks["all"], {k: v for k, v in checks.items() if isinstance(v, bool)}


@given(multigraphs(max_vertices=4, max_edges=6),
       st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(3, 4)]))
def test_alpha_limits(g, alpha):
    assert alpha_limit_check(g, alpha)


@given(multigraphs(max_vertices=5, max_edges=7))
def test_lowest_q_coefficient_is_connected_spanning(g):
    g = sym(g)
    assert compute_z(g).q_coefficient(g.components()) == connected_spanning_poly(g)
    assert z_tilde(g).shift_q(g.n) == compute_z(g)


def test_k4_has_sixteen_spanning_trees():
    g = sym(complete(4))
    assert spanning_tree_poly(g).evaluate({e.id: 1 for e in g.edges}) == 16


def test_symbolic_cap(monkeypatch):
    monkeypatch.setenv("TUTTEKIT_CAP_EDGES", "5")
    with pytest.raises(CapExceeded):
        compute_z(sym(complete(4)))
    # numeric weights are not capped
    assert compute_z(complete(4), {e: -1 for e in range(6)}).to_laurent() == falling(4)


def test_named_symbols_share_nothing_but_the_label():
    g = Multigraph.from_pairs(2, [(0, 1), (0, 1)], [Symbol("a"), Symbol("a")])
    z = compute_z(g)
    assert z.variables() == [0, 1]


def test_all_ones_counts_subsets():
    for n in range(2, 6):
        assert compute_z(path(n), {e: 1 for e in range(n - 1)}).evaluate({}, q=1) == 2 ** (n - 1)
