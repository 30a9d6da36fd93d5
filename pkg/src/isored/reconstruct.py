"""Recovering full-network spectral data from a reduction.

Complement vertices are processed by depth: a vertex's coordinate depends
only on coordinates of vertices it points to, which all sit at smaller
depth.  Loops are ignored when computing depths; a loop only enters the
recursion through the divisor ``l0 - w(l,l)(l0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisNotMet, LoopWeightEqualsLambda0, NumericFailure, SingularBasis, ZeroVectorInput
from .linalg import RatMatrix, SingularMatrix, as_ratmatrix, canonical_basis, inverse, matmul, matvec, nullspace
from .netgraph import Network, _as_structural
from .ratfield import ONE_G, ZERO_G, as_gauss
from .reduction import reduce_graph
from .spectra import _chain_from_top, _in_span, _power_kernel, _shifted, spectrum

__all__ = [
    "DepthMap",
    "JordanData",
    "vertex_depths",
    "reconstruct_vector",
    "jordan_data",
    "rebuild_matrix",
]


@dataclass(frozen=True)
class DepthMap:
    depth: dict

    @property
    def max_depth(self) -> int:
        return max(self.depth.values(), default=0)

    def stratum(self, k: int):
        """Vertices of depth exactly ``k``."""
        return sorted(v for v, d in self.depth.items() if d == k)

    def strata(self):
        """``S_k``: vertices of depth ``<= k``, for ``k = 0..max_depth``."""
        return [sorted(v for v, d in self.depth.items() if d <= k) for k in range(self.max_depth + 1)]


def vertex_depths(net: Network, S) -> DepthMap:
    """Depth 0 on the kept set; a complement vertex sits one above the
    deepest vertex it points to (and at depth 1 when it points nowhere)."""
    S = _as_structural(net, S)
    depth = {v: 0 for v in S.keep}
    for v in reversed(S.topo_order):
        targets = [w for w in net.successors(v) if w != v]
        depth[v] = 1 + max((depth[w] for w in targets), default=0)
    return DepthMap(dict(sorted(depth.items())))


def reconstruct_vector(net: Network, S, lambda0, known, prev=None, check: bool = True):
    """Full vector from its restriction ``known`` to the kept set.

    With ``prev`` omitted this rebuilds an eigenvector; with ``prev`` the
    already rebuilt previous chain member, it rebuilds the next one.  Each
    complement coordinate is

        v_l = (sum_j w(l,j)(l0) v_j - prev_l) / (l0 - w(l,l)(l0)),

    taken in order of increasing depth.  When ``check`` is set the reduced
    data must satisfy ``R_S(l0) v_S - l0 v_S = (1 + c) prev_S`` with
    ``c != -1`` (just ``R_S(l0) v_S = l0 v_S`` for an eigenvector);
    otherwise :class:`HypothesisNotMet` is raised.  The result satisfies
    ``(M(l0) - l0 I) v = prev`` on the full network.
    """
    S = _as_structural(net, S)
    z = as_gauss(lambda0)
    known = [as_gauss(x) for x in known]
    if len(known) != len(S.keep):
        raise ValueError(f"expected {len(S.keep)} kept coordinates, got {len(known)}")
    prev = [ZERO_G] * net.n if prev is None else [as_gauss(x) for x in prev]
    if len(prev) != net.n:
        raise ValueError(f"previous vector needs {net.n} coordinates")
    if not any(known):
        raise ZeroVectorInput("the reduced vector is zero")
    if check:
        _check_hypothesis(net, S, z, known, [prev[k - 1] for k in S.keep])
    v = [ZERO_G] * net.n
    for k, x in zip(S.keep, known):
        v[k - 1] = x
    depths = vertex_depths(net, S)
    for d in range(1, depths.max_depth + 1):
        for l in depths.stratum(d):
            denom = z - net.weight(l, l)(z)
            if not denom:
                raise LoopWeightEqualsLambda0(f"loop weight at {l} equals {z} there")
            acc = -prev[l - 1]
            for j in net.successors(l):
                if j != l:
                    acc = acc + net.weight(l, j)(z) * v[j - 1]
            v[l - 1] = acc / denom
    return v


def _check_hypothesis(net, S, z, vS, pS):
    Rz = reduce_graph(net, S).adjacency().evaluate(z)
    left = [x - z * y for x, y in zip(matvec(Rz, vS), vS)]
    if not any(pS):
        if any(left):
            raise HypothesisNotMet(f"the reduced vector is not an eigenvector at {z}")
        return
    factor = None
    for a, b in zip(left, pS):
        if b:
            q = a / b
            if factor is None:
                factor = q
            elif q != factor:
                factor = None
                break
        elif a:
            factor = None
            break
    if factor is None or not factor:
        raise HypothesisNotMet("R v_S - l0 v_S is not a nonzero multiple (1 + c) of the previous vector")


# ---------------------------------------------------------------------------
# Jordan data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanData:
    """``blocks[k] = (eigenvalue, size)``; ``basis`` holds the chain columns
    in block order, each chain listed eigenvector first."""

    blocks: tuple
    basis: tuple

    @property
    def dim(self) -> int:
        return sum(size for _, size in self.blocks)

    def block_sizes(self, eigenvalue=None):
        return tuple(sorted(s for z, s in self.blocks if eigenvalue is None or z == as_gauss(eigenvalue)))

    def jordan_matrix(self):
        n = self.dim
        J = [[ZERO_G] * n for _ in range(n)]
        k = 0
        for z, size in self.blocks:
            z = as_gauss(z)
            for a in range(size):
                J[k + a][k + a] = z
                if a + 1 < size:
                    J[k + a][k + a + 1] = ONE_G
            k += size
        return J


def jordan_data(M) -> JordanData:
    """Exact Jordan decomposition of a constant matrix with Gaussian-rational
    eigenvalues.  Chains are chosen longest first at each eigenvalue."""
    M = as_ratmatrix(M)
    if not M.is_constant():
        raise ValueError("Jordan data is defined for constant matrices only")
    sp = spectrum(M)
    if not sp.is_exact:
        raise NumericFailure("Jordan data needs exact eigenvalues")
    blocks, columns = [], []
    for e in sp:
        z = e.value
        N = _shifted(M, z)
        kernels = [[], canonical_basis(nullspace(N))]
        while True:
            nxt = _power_kernel(N, len(kernels))
            if len(nxt) == len(kernels[-1]):
                break
            kernels.append(nxt)
        top = len(kernels) - 1
        covered = {k: [] for k in range(1, top + 1)}
        for k in range(top, 0, -1):
            span = list(kernels[k - 1]) + covered[k]
            for cand in kernels[k]:
                if _in_span(cand, canonical_basis(span) if span else []):
                    continue
                chain = _chain_from_top(N, cand, k)
                blocks.append((z, k))
                columns.extend(chain)
                for level, vec in enumerate(chain, start=1):
                    if level < k:
                        covered[level].append(vec)
                span.append(cand)
    if len(columns) != M.dim:
        raise NumericFailure("could not complete a Jordan basis")
    return JordanData(tuple(blocks), tuple(tuple(c) for c in columns))


def rebuild_matrix(jd: JordanData) -> RatMatrix:
    """``B J B^-1`` with ``B`` the basis columns."""
    n = jd.dim
    if len(jd.basis) != n or any(len(c) != n for c in jd.basis):
        raise ValueError("basis does not match the block sizes")
    B = [[as_gauss(jd.basis[c][r]) for c in range(n)] for r in range(n)]
    try:
        Binv = inverse(B)
    except SingularMatrix:
        raise SingularBasis("the basis columns are linearly dependent") from None
    return RatMatrix(matmul(matmul(B, jd.jordan_matrix()), Binv))
