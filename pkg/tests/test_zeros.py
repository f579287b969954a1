from fractions import Fraction

import pytest

from tuttekit.algebra import LaurentPoly, Poly
from tuttekit.fixtures import (bounded_degree_corpus, complete, cycle, path, petersen, star,
                               theta)
from tuttekit.graph import Multigraph
from tuttekit.zeros import (ROYLE_ROOTS, DISC_CONSTANT, chromatic_roots, complex_roots,
                            conjecture_experiments, flow_roots, sturm_count,
                            zero_free_disc_check)
from tuttekit.report import HOLDS

q = LaurentPoly.monomial(1)


def _close(got, want, tol):
    got, want = sorted(got, key=lambda z: (z.real, z.imag)), sorted(want, key=lambda z: (z.real, z.imag))
    return len(got) == len(want) and all(abs(a - b) <= tol for a, b in zip(got, want))


def test_factored_cubic():
    rs = complex_roots(q * (q - 1) * (q - 2))
    assert _close(rs.roots, [0, 1, 2], 1e-10)
    assert rs.degree == 3 and max(rs.residuals) <= 1e-10


def test_imaginary_pair():
    rs = complex_roots(q * q + 1)
    assert _close(rs.roots, [1j, -1j], 1e-12)


def test_wilkinson_eight():
    p = LaurentPoly.constant(1)
    for k in range(1, 9):
        p = p * (q - k)
    rs = complex_roots(p)
    assert _close(rs.roots, list(range(1, 9)), 1e-6)


def test_multiplicities_are_exact():
    rs = complex_roots((q - 1) ** 3 * (q + 2) ** 2 * q)
    assert len(rs) == 6
    assert dict(zip([round(z.real) for z in rs.distinct], rs.multiplicities)) == {-2: 2, 0: 1, 1: 3}


def test_univariate_poly_and_list_inputs():
    x = Poly.var("x")
    assert _close(complex_roots(x * x - 2).roots, [2 ** 0.5, -(2 ** 0.5)], 1e-12)
    assert _close(complex_roots([Fraction(-1, 4), 0, 1]).roots, [0.5, -0.5], 1e-12)


def test_laurent_negative_exponents_cleared():
    rs = complex_roots((q - 3).shift(-2))
    assert _close(rs.roots, [3], 1e-12)


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        complex_roots(LaurentPoly())


def test_source_hash_is_stable():
    a = complex_roots(q * q - q - 1).source_hash
    b = complex_roots(q * q - q - 1).source_hash
    assert a == b and len(a) == 16


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_graph_roots(n):
    rs = chromatic_roots(complete(n))
    assert _close(rs.roots, list(range(n)), 1e-9)


def test_cycle_four_both_ways():
    direct = chromatic_roots(cycle(4)).roots
    formula = complex_roots((q - 1) ** 4 + (q - 1)).roots
    expect = [0, 1, (3 + 1j * 3 ** 0.5) / 2, (3 - 1j * 3 ** 0.5) / 2]
    assert _close(direct, expect, 1e-10) and _close(formula, expect, 1e-10)


def test_tree_roots():
    rs = chromatic_roots(path(5))
    assert rs.real_roots() == pytest.approx([0, 1])
    assert rs.multiplicities == [1, 4]


def test_flow_roots_of_k4():
    # F_{K4} = (q-1)(q-2)(q-3)
    assert _close(flow_roots(complete(4)).roots, [1, 2, 3], 1e-10)


def test_loop_rejected():
    with pytest.raises(ValueError):
        chromatic_roots(Multigraph.from_pairs(1, [(0, 0)]))


def test_constant_is_exact_decimal():
    assert DISC_CONSTANT == Fraction(7963907, 1000000)


@pytest.mark.parametrize("g,delta", [(petersen(), 3), (complete(5), 4), (star(5), 5)])
def test_disc_examples(g, delta):
    rep = zero_free_disc_check(g)
    assert rep.verdict == HOLDS
    assert rep.details["max_degree"] == delta
    assert rep.details["max_modulus"] < float(DISC_CONSTANT) * delta


def test_petersen_radius():
    rep = zero_free_disc_check(petersen())
    assert rep.details["radius_max_degree"] == pytest.approx(23.891721)


def test_star_second_degree_union():
    rep = zero_free_disc_check(star(6))
    assert rep.details["second_degree"] == 1 and rep.verdict == HOLDS


def test_weighted_disc_samples():
    for g in bounded_degree_corpus(5, seed=3, max_vertices=6):
        assert zero_free_disc_check(g, v_samples=2, seed=1).verdict == HOLDS


def test_sturm_count():
    p = (q - 1) * (q - 2) * (q * q + 1)
    assert sturm_count(p, Fraction(0)) == 2
    assert sturm_count(p, Fraction(3, 2)) == 1
    assert sturm_count(p, Fraction(0), Fraction(3, 2)) == 1


def test_conjecture_experiments_recorded():
    tree = conjecture_experiments(path(4))
    assert tree["maxmaxflow"] == 1 and tree["positive_beyond_maxmaxflow"]
    c4 = conjecture_experiments(cycle(4))
    assert c4["maxmaxflow"] == 2 and c4["positive_beyond_maxmaxflow"]
    th = conjecture_experiments(theta(2, 3))
    assert th["maxmaxflow"] == 3
    assert set(th) >= {"half_plane_re_le_maxmaxflow", "taylor_nonnegative_at_maxmaxflow"}


def test_royle_roots_recorded_only():
    assert set(ROYLE_ROOTS) == {47, 95, 191, 383}
    assert all(isinstance(z, complex) for z in ROYLE_ROOTS.values())


def test_root_count_equals_degree():
    for g in (petersen(), theta(3, 3), complete(6)):
        rs = chromatic_roots(g)
        assert len(rs) == rs.degree
        assert max(rs.residuals) <= rs.tolerance
