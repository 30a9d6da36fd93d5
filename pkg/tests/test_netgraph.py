"""Networks, structural sets and branch sums."""

from functools import lru_cache

import pytest
from hypothesis import given, settings

from isored.errors import BadVertexIndex, CycleInComplement, EmptySet, LoopWeightIsLambda
from isored.linalg import RatMatrix
from isored.netgraph import (
    Network,
    branch_weight,
    branches,
    branches_by_length,
    reduced_entry,
    structural_sets,
    validate_lambda0,
    validate_structural,
)
from isored.ratfield import I, LAMBDA, RatFunc

from conftest import NINE_SETS
from properties import branch_sum_identity, first_structural
from strategies import networks


def test_adjacency_frozen(net):
    assert net.adjacency() == RatMatrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, -2, 0]])
    assert Network.from_matrix(net.adjacency()) == net


def test_structural_sets_frozen(net):
    assert [s.keep for s in structural_sets(net, 1)] == [(3,), (4,)]
    sets = [s.keep for s in structural_sets(net, 2)] + [s.keep for s in structural_sets(net, 3)]
    assert sorted(sets) == sorted(NINE_SETS)


def test_structural_rejections(net):
    with pytest.raises(CycleInComplement) as info:
        validate_structural(net, [1, 2])
    assert set(info.value.cycle) == {3, 4}
    with pytest.raises(EmptySet):
        validate_structural(net, [])
    with pytest.raises(BadVertexIndex):
        validate_structural(net, [1, 5])
    looped = Network(2, {(1, 2): 1, (2, 2): LAMBDA})
    with pytest.raises(LoopWeightIsLambda):
        validate_structural(looped, [1])


def test_lambda0_structural():
    net = Network(2, {(1, 2): 1, (2, 1): 1, (2, 2): "l^2"})
    assert validate_lambda0(net, [1], 2)
    assert not validate_lambda0(net, [1], 1)
    assert not validate_lambda0(net, [1], 0)


def test_topological_order(net):
    S = validate_structural(net, [1, 4])
    assert S.complement == (2, 3)
    assert S.topo_order == (2, 3)


def test_branches_frozen(net):
    assert [b.path for b in branches(net, [1, 4], 1, 4)] == [(1, 2, 3, 4)]
    assert [b.path for b in branches(net, [1, 4], 4, 4)] == [(4, 3, 4)]
    assert [b.path for b in branches(net, [1, 4], 4, 1)] == [(4, 1)]
    assert branches(net, [1, 4], 1, 1) == []


def test_branch_weight_frozen(net):
    assert branch_weight((1, 2, 3, 4), net) == 1 / LAMBDA**2
    assert branch_weight((4, 3, 4), net) == -2 / LAMBDA


def test_branch_weight_with_loops():
    net = Network(3, {(1, 2): 2, (2, 2): 3, (2, 3): "l", (3, 1): 1})
    assert branch_weight((1, 2, 3), net) == 2 * LAMBDA / (LAMBDA - 3)


def test_branches_by_length_frozen(net):
    assert branches_by_length(net, [1, 4], 1, 4, 3) == 1 / LAMBDA**2
    assert branches_by_length(net, [1, 4], 1, 4, 2) == 0
    with pytest.raises(ValueError):
        branches_by_length(net, [1, 4], 1, 4, 0)


def test_reduced_entry_frozen(net):
    assert reduced_entry(net, [1, 2, 4], 4, 4) == -2 / LAMBDA
    assert reduced_entry(net, [1, 2, 4], 2, 4) == 1 / LAMBDA
    assert reduced_entry(net, [1, 4], 1, 4) == 1 / LAMBDA**2


def test_relabel_and_labels(net):
    h = net.relabeled({1: 3, 2: 1, 3: 4, 4: 2})
    assert h.weight(3, 1) == 1
    assert h.weight(2, 3) == -1
    assert Network(2, {(1, 2): I}, labels=["a", "b"]).index_of("b") == 2


def _dag_path_count(net, S, i, j):
    """Branch count by an independent recursion over complement paths."""
    comp = set(S.complement)

    @lru_cache(maxsize=None)
    def tails(a):
        total = 0
        for w in net.successors(a):
            if w == a:
                continue
            if w == j:
                total += 1
            elif w in comp:
                total += tails(w)
        return total

    total = 0
    for w in net.successors(i):
        if w == j:
            total += 1
        elif w in comp:
            total += tails(w)
    return total


@settings(max_examples=30, deadline=None)
@given(networks())
def test_branch_sum_identity(net):
    branch_sum_identity(net)


@settings(max_examples=100, deadline=None)
@given(networks())
def test_memoised_sum_matches_enumeration(net):
    S = first_structural(net)
    for i in S.keep:
        for j in S.keep:
            enumerated = RatFunc.constant(0)
            for b in branches(net, S, i, j):
                enumerated = enumerated + branch_weight(b, net)
            assert enumerated == reduced_entry(net, S, i, j)
            assert len(branches(net, S, i, j)) == _dag_path_count(net, S, i, j)
