"""Exact linear algebra over Q(i) and over rational functions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isored.errors import PoleError
from isored.linalg import (
    RatMatrix,
    SingularMatrix,
    canonical_basis,
    det,
    det_poly,
    gauss_matrix,
    in_span,
    inverse,
    matmul,
    matvec,
    nullspace,
    rank,
    rref,
    solve_particular,
)
from isored.ratfield import I, LAMBDA, Poly, as_gauss

from strategies import gauss


def test_rref_frozen():
    r, piv = rref(gauss_matrix([[2, 4, 6], [1, 2, 4], [0, 0, 1]]))
    assert piv == [0, 2]
    assert r == gauss_matrix([[1, 2, 0], [0, 0, 1], [0, 0, 0]])


def test_nullspace_frozen():
    ns = nullspace(gauss_matrix([[1, 2, 3], [2, 4, 6]]))
    assert ns == gauss_matrix([[-2, 1, 0], [-3, 0, 1]])


def test_canonical_basis_is_unique_for_the_span():
    a = canonical_basis(gauss_matrix([[1, I, 0], [0, 1, 1]]))
    b = canonical_basis(gauss_matrix([[1, I + 1, 1], [2, 2 * I, 0]]))
    assert a == b
    assert all(next(x for x in v if x) == 1 for v in a)


def test_inverse_and_singular():
    a = gauss_matrix([[1, I], [2, 3]])
    inv = inverse(a)
    assert matmul(a, inv) == gauss_matrix([[1, 0], [0, 1]])
    with pytest.raises(SingularMatrix):
        inverse(gauss_matrix([[1, 2], [2, 4]]))


def test_det_frozen():
    assert det(gauss_matrix([[1, I], [I, 1]])) == 2
    assert det(gauss_matrix([[0, 1], [1, 0]])) == -1
    x = Poly.monomial(1)
    assert det_poly([[x, Poly.constant(1)], [Poly.constant(-1), x]]) == x * x + 1


def test_solve_particular():
    a = gauss_matrix([[1, 1], [2, 2]])
    assert solve_particular(a, [as_gauss(3), as_gauss(6)]) == [3, 0]
    assert solve_particular(a, [as_gauss(3), as_gauss(5)]) is None


def test_in_span_and_rank():
    vs = gauss_matrix([[1, 0, I], [0, 1, 1]])
    assert in_span([as_gauss(2), as_gauss(3), 2 * I + 3], vs)
    assert not in_span([as_gauss(0), as_gauss(0), as_gauss(1)], vs)
    assert rank(vs) == 2


def test_ratmatrix_evaluate_and_pole():
    m = RatMatrix([["l", "1/l"], [0, "l^2"]])
    assert m.evaluate(I) == gauss_matrix([[I, -I], [0, -1]])
    assert np.allclose(m.evaluate_numeric(2.0), [[2, 0.5], [0, 4]])
    with pytest.raises(PoleError):
        m.evaluate(0)
    assert not m.is_constant()
    assert m.minus_lambda()[0][0] == 0


def test_equal_up_to_permutation():
    m = RatMatrix([[1, "l"], [0, 2]])
    p = RatMatrix([[2, 0], ["l", 1]])
    assert m.equal_up_to_permutation(p) is not None
    assert m.equal_up_to_permutation(RatMatrix([[1, 0], ["l", 2]])) is None


def test_literals_table():
    m = RatMatrix([[LAMBDA, 1], [0, I]])
    assert m.literals() == [["l", "1"], ["0", "i"]]


@settings(max_examples=100, deadline=None)
@given(st.lists(gauss, min_size=9, max_size=9))
def test_det_matches_numpy(xs):
    a = [xs[0:3], xs[3:6], xs[6:9]]
    num = np.array([[complex(as_gauss(x)) for x in r] for r in a])
    assert abs(complex(det(a)) - np.linalg.det(num)) <= 1e-8 * (1 + np.abs(num).max() ** 3)


@settings(max_examples=100, deadline=None)
@given(st.lists(gauss, min_size=12, max_size=12))
def test_nullspace_annihilated(xs):
    a = [xs[0:4], xs[4:8], [x + y for x, y in zip(xs[0:4], xs[4:8])]]
    ns = nullspace(a)
    assert len(ns) == 4 - rank(a)
    for v in ns:
        assert not any(matvec(a, v))
