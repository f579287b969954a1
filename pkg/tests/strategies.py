"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from tuttekit.algebra import GaussianRational, LaurentPoly, MultiAffinePoly
from tuttekit.graph import Multigraph

small_int = st.integers(min_value=-9, max_value=9)
fractions = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
gaussians = st.builds(GaussianRational, fractions, fractions)


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7, loops=True, connected=False):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(0, max_edges))
    pairs = []
    for _ in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u == v and not loops:
            continue
        pairs.append((u, v))
    if connected:
        for i in range(1, n):
            pairs.append((draw(st.integers(0, i - 1)), i))
    return Multigraph.from_pairs(n, pairs)


@st.composite
def laurent_polys(draw, low=-3, high=4):
    coeffs = draw(st.dictionaries(st.integers(low, high), small_int, max_size=5))
    return LaurentPoly(coeffs)


@st.composite
def multiaffine_polys(draw, nvars=4, qlow=-2, qhigh=3):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, (1 << nvars) - 1),
                                           st.integers(qlow, qhigh)),
                                 small_int, max_size=6))
    return MultiAffinePoly(terms)
