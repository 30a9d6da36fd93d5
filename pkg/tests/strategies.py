"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from isored.netgraph import Network
from isored.ratfield import GaussianRational, Poly, RatFunc

small_q = st.builds(Fraction, st.integers(-36, 36), st.sampled_from([1, 2, 3, 6]))
gauss = st.builds(GaussianRational, small_q, small_q)
nonzero_gauss = st.builds(
    lambda re, im, flip: GaussianRational(im, re) if flip else GaussianRational(re, im),
    st.builds(Fraction, st.integers(1, 36), st.sampled_from([1, 2, 3, 6])),
    small_q,
    st.booleans(),
)
polys = st.lists(gauss, min_size=0, max_size=3).map(Poly)
nonzero_polys = st.builds(lambda lo, lead: Poly(list(lo) + [lead]), st.lists(gauss, max_size=2), nonzero_gauss)
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)
nonzero_ratfuncs = st.builds(RatFunc, nonzero_polys, nonzero_polys)

weights = st.one_of(
    gauss.map(RatFunc.constant),
    st.builds(lambda c, k: RatFunc(Poly.constant(c), Poly.monomial(k)), nonzero_gauss, st.integers(1, 2)),
)


@st.composite
def networks(draw, min_n=2, max_n=5):
    n = draw(st.integers(min_n, max_n))
    edges = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if draw(st.integers(0, 99)) < 45:
                w = draw(weights)
                if w:
                    edges[(i, j)] = w
    return Network(n, edges)


def q(x):
    return Fraction(x)
