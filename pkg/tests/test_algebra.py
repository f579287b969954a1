from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tuttekit.algebra import (CapExceeded, GaussianRational, LaurentPoly, MultiAffinePoly,
                              NonMultiaffineError, Poly, RationalFunction, exact_determinant,
                              exact_permanent)

from strategies import fractions, gaussians, laurent_polys, multiaffine_polys

Q = LaurentPoly.monomial(1)


def leibniz(m):
    """Determinant by the permutation expansion, as an independent oracle."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total + term
    return total


# -- Gaussian rationals


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(gaussians)
def test_gaussian_inverse_and_norm(a):
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1) / a
        return
    assert a * (GaussianRational(1) / a) == 1
    assert a * a.conjugate() == a.norm()


def test_gaussian_matches_python_complex():
    a, b = GaussianRational(Fraction(1, 2), 3), GaussianRational(-2, Fraction(1, 4))
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))
    assert complex(a / b) == pytest.approx(complex(a) / complex(b))


# -- Laurent polynomials


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_laurent_ring(p, r, s):
    assert p * (r + s) == p * r + p * s
    assert (p - p).is_zero()


@given(laurent_polys(), fractions)
def test_laurent_evaluation_is_a_homomorphism(p, x):
    if x == 0:
        return
    r = p * p + p
    assert r.evaluate(x) == p.evaluate(x) ** 2 + p.evaluate(x)


@given(laurent_polys(0, 5), laurent_polys(0, 3))
def test_divmod_reconstructs(p, d):
    if d.is_zero():
        return
    quo, rem = p.divmod(d)
    assert quo * d + rem == p
    assert rem.is_zero() or rem.degree() < d.degree()


def test_squarefree_decomposition_against_sympy():
    q = sympy.Symbol("q")
    expr = q ** 3 * (q - 1) ** 2 * (q - 2) * (q ** 2 + 1) ** 3
    coeffs = sympy.Poly(sympy.expand(expr), q).all_coeffs()[::-1]
    p = LaurentPoly.from_coefficients([int(c) for c in coeffs])
    parts = p.squarefree_decomposition()
    product = LaurentPoly.constant(1)
    for f, k in parts:
        product = product * f ** k
    assert product == p
    mult = {}
    for f, k in parts:
        mult[k] = mult.get(k, 0) + f.degree()
    # degrees grouped by multiplicity: (q-2) once, (q-1) twice, q and q^2+1 thrice
    assert mult == {1: 1, 2: 1, 3: 3}


def test_taylor_shift():
    p = LaurentPoly.from_coefficients([0, 0, 1])       # q^2
    assert p.taylor_shift(1) == LaurentPoly.from_coefficients([1, 2, 1])


# -- multiaffine polynomials


def test_multiaffine_rejects_squares():
    v0 = MultiAffinePoly.variable(0)
    with pytest.raises(NonMultiaffineError):
        v0 * v0


@given(multiaffine_polys(), multiaffine_polys())
def test_multiaffine_addition_commutes(p, r):
    assert p + r == r + p
    assert (p + r) - r == p


@given(multiaffine_polys())
def test_dual_transform_twice_scales_by_q_power(p):
    universe = 0b1111
    twice = p.dual_transform(universe).dual_transform(universe)
    assert twice == p.shift_q(4)


@given(multiaffine_polys(), st.dictionaries(st.integers(0, 3), fractions, min_size=4,
                                            max_size=4), fractions)
def test_evaluate_agrees_with_poly_evaluate(p, values, q):
    if q == 0:
        return
    direct = p.evaluate(values, q=q)
    via_poly = p.to_poly().evaluate({**{f"v_{i}": x for i, x in values.items()}, "q": q})
    assert direct == via_poly


def test_homogenized_substitute_is_cleared_substitution():
    # p = 1 + v0 + v0 v1 ; v0 -> (a / b) with a = v2, b = q + v3
    p = MultiAffinePoly({(0, 0): 1, (1, 0): 1, (3, 0): 1})
    n, d = MultiAffinePoly.variable(2), MultiAffinePoly.variable(3) + MultiAffinePoly.q_power(1)
    h = p.homogenized_substitute({0: (n, d)})
    assert h == d + n + n * MultiAffinePoly.variable(1)


def test_split_and_derivative():
    p = MultiAffinePoly({(0b011, 1): 2, (0b010, 0): 3, (0, 0): 1})
    p0, p1 = p.split(0)
    assert p0 + MultiAffinePoly.variable(0) * p1 == p
    assert p.derivative(0) == MultiAffinePoly({(0b010, 1): 2})


# -- general polynomials and rational functions


def test_rational_function_reduces():
    x, y = Poly.var("x"), Poly.var("y")
    r = RationalFunction((x + y) * (x - y), (x + y) * y).reduced()
    assert r == RationalFunction(x - y, y)
    assert r.den == y


def test_poly_sympy_round_trip():
    x, y = Poly.var("x"), Poly.var("y")
    p = x ** 3 * y - Fraction(2, 3) * y + 5
    assert Poly.from_sympy(p.to_sympy()) == p


# -- determinants and permanents


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_leibniz(m):
    assert exact_determinant(m) == leibniz(m)


@given(st.lists(st.lists(gaussians, min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_gaussian(m):
    assert exact_determinant(m) == leibniz(m)


def test_polynomial_determinant_matches_leibniz():
    x = [MultiAffinePoly.variable(i) for i in range(3)]
    m = [[x[0] + x[1], -x[1], MultiAffinePoly.zero()],
         [-x[1], x[1] + x[2], -x[2]],
         [MultiAffinePoly.zero(), -x[2], x[2] + 1]]
    lifted = [[e.to_poly() for e in row] for row in m]
    assert exact_determinant(m).to_poly() == leibniz(lifted)


def test_permanent():
    assert exact_permanent([[1, 1], [1, 1]]) == 2
    assert exact_permanent([[1] * 4 for _ in range(4)]) == 24
    with pytest.raises(CapExceeded):
        exact_permanent([[1] * 11 for _ in range(11)])


def test_json_round_trip():
    p = MultiAffinePoly({(0b101, -1): Fraction(3, 7), (0, 2): GaussianRational(1, -2)})
    assert MultiAffinePoly.from_json(p.to_json()) == p
    lp = LaurentPoly({-2: 5, 3: Fraction(-1, 2)})
    assert LaurentPoly.from_json(lp.to_json()) == lp
