"""Characteristic functions, spectra, eigenvectors, chains and multiplicities."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isored.errors import ChainTerminated, NotAnEigenvalue
from isored.linalg import RatMatrix
from isored.ratfield import I, LAMBDA, GaussianRational, Poly
from isored.spectra import (
    Eigenvalue,
    SpectrumMultiset,
    canonical_chain,
    char_function,
    eigenvectors_at,
    generalized_chain,
    jordan_blocks,
    jordan_structure,
    multiplicities,
    multiset_op,
    poly_roots,
    shared_spectrum,
    spectrum,
)

from conftest import A1, A2, U_I, U_MI, V_I, V_MI
from strategies import gauss

R124 = RatMatrix([[0, 1, 0], [0, 0, "1/l"], [-1, 0, "-2/l"]])
R14 = RatMatrix([[0, "1/l^2"], [-1, "-2/l"]])
GOLDEN = ((1 + 5**0.5) / 2 * 1j, (1 - 5**0.5) / 2 * 1j)


def ms(*values):
    return SpectrumMultiset.from_values(values)


def test_four_vertex_spectrum(net):
    M = net.adjacency()
    assert char_function(M) == (LAMBDA**2 + 1) ** 2
    sp = spectrum(M)
    assert sp.is_exact
    assert sp == ms(I, I, -I, -I)
    assert sp.multiplicity(I) == 2


def test_reduced_spectra_match_original():
    assert spectrum(R124) == ms(I, I, -I, -I)
    assert spectrum(R14) == ms(I, I, -I, -I)


def test_evaluated_reduction_has_numeric_roots():
    sp = spectrum(RatMatrix(R124.evaluate(I)))
    assert not sp.is_exact
    assert sp.exact_values() == [I]
    numeric = sorted((complex(e.value) for e in sp if not e.exact), key=lambda z: z.imag)
    assert np.allclose(numeric, sorted(GOLDEN, key=lambda z: z.imag), atol=1e-9)
    assert all(e.residual <= 1e-9 for e in sp)


def test_evaluated_two_vertex_reduction_is_exact():
    assert spectrum(RatMatrix(R14.evaluate(I))) == ms(I, I)


def test_numerator_degree_exceeds_dimension():
    assert spectrum(RatMatrix([["1/l"]])) == ms(-1, 1)


def test_poly_roots_with_candidates():
    p = Poly.from_roots([GaussianRational("1/3"), GaussianRational("1/3"), I])
    assert poly_roots(p) == ms(GaussianRational("1/3"), GaussianRational("1/3"), I)


def test_constant_loop_l_has_empty_spectrum():
    assert len(spectrum(RatMatrix([["l"]]))) == 0


def test_eigenvectors_frozen(net):
    M = net.adjacency()
    assert eigenvectors_at(M, I) == [[1, I, -1, -I]]
    assert eigenvectors_at(M, -I) == [[1, -I, -1, I]]
    assert eigenvectors_at(R14, I) == [[1, -I]]
    with pytest.raises(NotAnEigenvalue):
        eigenvectors_at(M, 2)


def test_numeric_eigenvectors(net):
    vs = eigenvectors_at(net.adjacency(), 1j)
    assert len(vs) == 1
    assert np.allclose(vs[0], [1, 1j, -1, -1j])


def test_chain_matches_displayed_chain(net):
    M = net.adjacency()
    assert canonical_chain(M, I, [U_I, V_I]) == generalized_chain(M, I, 2)
    assert canonical_chain(M, -I, [U_MI, V_MI]) == generalized_chain(M, -I, 2)
    ch = generalized_chain(M, I, 2)
    assert ch.vectors == ((1, I, -1, -I), (0, 1, 2 * I, -3))
    assert ch.verify(M)


def test_chain_grown_from_given_eigenvector(net):
    ch = generalized_chain(net.adjacency(), I, 2, u=U_I)
    assert ch.vectors[0] == tuple(U_I)
    assert ch.verify(net.adjacency())


def test_chain_lost_and_recovered():
    with pytest.raises(ChainTerminated) as info:
        generalized_chain(RatMatrix(R124.evaluate(I)), I, 2)
    assert info.value.chain.depth == 1
    ch = generalized_chain(RatMatrix(R14.evaluate(I)), I, 2)
    assert ch.vectors == ((1, -I), (0, -1))


def test_multiplicities_frozen(net):
    r = multiplicities(net.adjacency(), I)
    assert (r.algebraic, r.geometric, r.defect) == (2, 1, 1)
    r = multiplicities(R124, I)
    assert (r.algebraic, r.geometric, r.defect) == (2, 1, None)
    r = multiplicities(RatMatrix(R124.evaluate(I)), I)
    assert (r.algebraic, r.geometric, r.defect) == (1, 1, 0)
    with pytest.raises(NotAnEigenvalue):
        multiplicities(net.adjacency(), 3)


def test_jordan_blocks_frozen(net):
    assert jordan_blocks(A1, 5) == (2, 2)
    assert jordan_blocks(A2, 5) == (1, 3)
    assert jordan_blocks(net.adjacency(), I) == (2,)
    assert jordan_structure(A1) == {GaussianRational(5): (2, 2)}


def test_shared_spectrum():
    M = RatMatrix([[1, 0], [0, 2]])
    assert shared_spectrum(M, RatMatrix([[2]])) == ms(2)
    assert len(shared_spectrum(M, RatMatrix([[3]]))) == 0


def test_multiset_operations():
    a = ms(I, I, -I)
    b = ms(I)
    assert multiset_op(a, b, "difference") == ms(I, -I)
    assert multiset_op(a, b, "union") == ms(I, I, I, -I)
    assert multiset_op(b, a, "subset")
    assert not multiset_op(a, b, "subset")
    assert ms(1j + 1e-9) == ms(I)
    assert ms(1j + 1e-5) != ms(I)
    assert len(b.difference(a)) == 0
    assert Eigenvalue(1.5 + 0.25j, 1, exact=False).literal() == "~1.5+0.25i"


@settings(max_examples=100, deadline=None)
@given(st.lists(gauss, min_size=9, max_size=9))
def test_spectrum_matches_numpy(xs):
    M = RatMatrix([xs[0:3], xs[3:6], xs[6:9]])
    expected = np.linalg.eigvals(M.to_numpy())
    got = spectrum(M)
    assert len(got) == 3
    assert got == SpectrumMultiset.from_values(list(expected), tol=1e-6)

