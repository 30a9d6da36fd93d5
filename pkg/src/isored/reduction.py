"""Isospectral reduction, by branch sums on a network and by block
elimination on a matrix over the rational-function field.

The two routes are computed independently; :func:`cross_validate` compares
them entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadVertexIndex, CycleInComplement, EmptySet, LoopWeightIsLambda, SingularComplement
from .linalg import RatMatrix, SingularMatrix, matmul, solve
from .netgraph import Network, StructuralSet, _as_structural, reduced_entry, validate_structural
from .ratfield import LAMBDA

__all__ = [
    "Partition",
    "reduce_graph",
    "reduce_matrix",
    "reduce_sequence",
    "reduce_onto",
    "cross_validate",
]


@dataclass(frozen=True)
class Partition:
    """Split of ``1..n`` into a kept set and its complement (1-based)."""

    n: int
    keep: tuple
    complement: tuple

    def __init__(self, n: int, keep):
        keep = tuple(sorted(set(keep)))
        if not keep:
            raise EmptySet("the kept index set is empty")
        for v in keep:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise BadVertexIndex(f"index {v!r} is not in 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "keep", keep)
        object.__setattr__(self, "complement", tuple(v for v in range(1, n + 1) if v not in keep))

    @classmethod
    def from_structural(cls, S: StructuralSet) -> "Partition":
        return cls(S.n, S.keep)

    @property
    def keep0(self):
        return [v - 1 for v in self.keep]

    @property
    def complement0(self):
        return [v - 1 for v in self.complement]

    @property
    def permutation(self):
        """Block order, complement first then kept (0-based)."""
        return self.complement0 + self.keep0


def _as_partition(n, part) -> Partition:
    if isinstance(part, Partition):
        if part.n != n:
            raise ValueError("partition size does not match the matrix")
        return part
    if isinstance(part, StructuralSet):
        return Partition.from_structural(part)
    return Partition(n, part)


def reduce_matrix(M, part) -> RatMatrix:
    """``M_kk - M_kc (M_cc - l*I)^-1 M_ck`` with ``k`` kept and ``c`` eliminated."""
    M = M if isinstance(M, RatMatrix) else RatMatrix(M)
    part = _as_partition(M.dim, part)
    kk, cc = part.keep0, part.complement0
    if not cc:
        return M.submatrix(kk)
    a = [[x - LAMBDA if r == c else x for c, x in zip(cc, row)] for r, row in zip(cc, M.block(cc, cc))]
    b = M.block(cc, kk)
    try:
        x = solve(a, b)
    except SingularMatrix:
        raise SingularComplement(
            f"det(M_cc - l*I) vanishes identically for complement {part.complement}"
        ) from None
    correction = matmul(M.block(kk, cc), x)
    d = M.block(kk, kk)
    return RatMatrix._raw([[d[i][j] - correction[i][j] for j in range(len(kk))] for i in range(len(kk))])


def reduce_graph(net: Network, S) -> Network:
    """Reduced network on ``S``: weights are the branch sums, vertices are
    renumbered ``1..|S|`` and keep their labels."""
    S = _as_structural(net, S)
    keep = S.keep
    edges = {}
    for a, i in enumerate(keep, start=1):
        for b, j in enumerate(keep, start=1):
            w = reduced_entry(net, S, i, j)
            if w:
                edges[(a, b)] = w
    return Network(len(keep), edges, [net.labels[v - 1] for v in keep])


def reduce_sequence(net: Network, chain) -> Network:
    """Apply reductions one after another.  Every set in ``chain`` names
    vertices by label, so nested sets can be written in original numbering."""
    current = net
    for labels in chain:
        idx = [current.index_of(lab) for lab in labels]
        current = reduce_graph(current, validate_structural(current, idx))
    return current


def reduce_onto(net: Network, keep) -> Network:
    """Reduction onto any nonempty vertex set.

    Uses a single reduction when ``keep`` is structural, otherwise removes the
    other vertices one at a time (each single-vertex complement is
    structural), and as a last resort eliminates the block algebraically.
    """
    keep = set(keep)
    if not keep:
        raise EmptySet("cannot reduce onto the empty set")
    try:
        return reduce_graph(net, validate_structural(net, keep))
    except (CycleInComplement, LoopWeightIsLambda):
        pass
    current = net
    wanted = {net.labels[v - 1] for v in keep}
    while current.n > len(wanted):
        drop = None
        for v in current.vertices:
            if current.labels[v - 1] not in wanted and not current.weight(v, v).is_lambda():
                drop = v
                break
        if drop is None:
            idx = [v for v in current.vertices if current.labels[v - 1] in wanted]
            m = reduce_matrix(current.adjacency(), Partition(current.n, idx))
            return Network.from_matrix(m, [current.labels[v - 1] for v in idx])
        rest = [v for v in current.vertices if v != drop]
        current = reduce_graph(current, validate_structural(current, rest))
    return current


def cross_validate(net: Network, S) -> bool:
    """True iff branch summation and block elimination give the same matrix."""
    S = _as_structural(net, S)
    by_graph = reduce_graph(net, S).adjacency()
    by_block = reduce_matrix(net.adjacency(), Partition.from_structural(S))
    return by_graph == by_block
