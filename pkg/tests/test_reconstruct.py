"""Depths, vector reconstruction and Jordan data."""

import pytest

from isored.errors import HypothesisNotMet, LoopWeightEqualsLambda0, SingularBasis, ZeroVectorInput
from isored.linalg import RatMatrix, matvec
from isored.netgraph import Network
from isored.ratfield import I
from isored.reconstruct import JordanData, jordan_data, rebuild_matrix, reconstruct_vector, vertex_depths
from isored.reduction import reduce_graph
from isored.spectra import generalized_chain

from conftest import A1, A2, U_I, V_I


def shifted(net, z):
    rows = net.adjacency().evaluate(z)
    return [[x - z if i == j else x for j, x in enumerate(r)] for i, r in enumerate(rows)]


def test_depths_frozen(net):
    d = vertex_depths(net, [1, 4])
    assert d.depth == {1: 0, 2: 2, 3: 1, 4: 0}
    assert d.max_depth == 2
    assert d.stratum(1) == [3]
    assert d.strata() == [[1, 4], [1, 3, 4], [1, 2, 3, 4]]


def test_depth_ignores_loops():
    net = Network(3, {(1, 2): 1, (2, 2): 5, (2, 3): 1, (3, 1): 1})
    assert vertex_depths(net, [1]).depth == {1: 0, 2: 2, 3: 1}


def test_eigenvector_reconstruction(net):
    assert reconstruct_vector(net, [1, 4], I, [I, 1]) == U_I


def test_chain_reconstruction(net):
    u = reconstruct_vector(net, [1, 4], I, [I, 1])
    R = RatMatrix(reduce_graph(net, [1, 4]).adjacency().evaluate(I))
    top = generalized_chain(R, I, 2, u=[I, 1]).vectors[1]
    c = 2
    v = reconstruct_vector(net, [1, 4], I, [(1 + c) * x for x in top], prev=u)
    assert v == [0, I, -2, -3 * I]
    assert matvec(shifted(net, I), v) == u


def test_displayed_generalized_vector_recovered(net):
    assert reconstruct_vector(net, [1, 4], I, [-3, 0], prev=U_I) == V_I


def test_hypothesis_refused(net):
    with pytest.raises(HypothesisNotMet):
        reconstruct_vector(net, [1, 4], I, [1, 1])
    with pytest.raises(HypothesisNotMet):
        reconstruct_vector(net, [1, 4], I, [1, 0], prev=[1, 0, 0, 1])
    # without the check the recursion still runs
    assert len(reconstruct_vector(net, [1, 4], I, [1, 1], check=False)) == 4


def test_reconstruction_errors(net):
    with pytest.raises(ZeroVectorInput):
        reconstruct_vector(net, [1, 4], I, [0, 0])
    with pytest.raises(ValueError):
        reconstruct_vector(net, [1, 4], I, [1])
    looped = Network(2, {(1, 2): 1, (2, 1): 1, (2, 2): 3})
    with pytest.raises(LoopWeightEqualsLambda0):
        reconstruct_vector(looped, [1], 3, [1], check=False)


def test_jordan_data_frozen():
    jd1, jd2 = jordan_data(A1), jordan_data(A2)
    assert jd1.block_sizes(5) == (2, 2)
    assert jd2.block_sizes(5) == (1, 3)
    assert rebuild_matrix(jd1) == A1
    assert rebuild_matrix(jd2) == A2
    assert jd1.dim == 4


def test_jordan_data_of_network(net):
    jd = jordan_data(net.adjacency())
    assert jd.block_sizes() == (2, 2)
    assert rebuild_matrix(jd) == net.adjacency()


def test_rebuild_from_displayed_factorisation():
    P = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    basis = tuple(tuple(P[r][c] for r in range(4)) for c in range(4))
    assert rebuild_matrix(JordanData(((5, 1), (5, 3)), basis)) == A2


def test_rebuild_singular_basis():
    with pytest.raises(SingularBasis):
        rebuild_matrix(JordanData(((1, 2),), ((1, 0), (2, 0))))
