"""Lambda-weighted directed networks, structural sets and branches.

Vertices are numbered ``1..n``.  Each network also carries ``labels``: the
names its vertices had in the network it was reduced from (by default the
numbers themselves), so a chain of reductions can keep referring to
original vertex names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import (
    BadVertexIndex,
    CycleInComplement,
    EmptySet,
    LoopWeightIsLambda,
)
from .linalg import RatMatrix
from .ratfield import (
    LAMBDA,
    ZERO_R,
    RatFunc,
    as_gauss,
    as_ratfunc,
)

__all__ = [
    "Network",
    "StructuralSet",
    "Branch",
    "adjacency",
    "validate_structural",
    "validate_lambda0",
    "structural_sets",
    "branches",
    "branch_weight",
    "reduced_entry",
    "branches_by_length",
]


class Network:
    """Directed graph on ``1..n`` with :class:`RatFunc` edge weights.

    Only nonzero weights are stored; a zero weight means "no edge".
    """

    __slots__ = ("n", "_edges", "_succ", "labels")

    def __init__(self, n: int, edges=None, labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = int(n)
        clean = {}
        for (i, j), w in dict(edges or {}).items():
            for v in (i, j):
                if not isinstance(v, int) or not 1 <= v <= n:
                    raise BadVertexIndex(f"vertex {v!r} is not in 1..{n}")
            w = as_ratfunc(w)
            if w:
                clean[(i, j)] = w
        self._edges = clean
        succ = {v: [] for v in range(1, self.n + 1)}
        for (i, j) in sorted(clean):
            succ[i].append(j)
        self._succ = succ
        if labels is None:
            labels = tuple(range(1, n + 1))
        labels = tuple(labels)
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be n distinct values")
        self.labels = labels

    @classmethod
    def from_matrix(cls, m, labels=None) -> "Network":
        m = m if isinstance(m, RatMatrix) else RatMatrix(m)
        edges = {
            (i + 1, j + 1): m[i, j]
            for i in range(m.dim)
            for j in range(m.dim)
            if m[i, j]
        }
        return cls(m.dim, edges, labels)

    @property
    def edges(self):
        return dict(self._edges)

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def weight(self, i: int, j: int) -> RatFunc:
        return self._edges.get((i, j), ZERO_R)

    def successors(self, i: int):
        return self._succ[i]

    def predecessors(self, j: int):
        return sorted(a for (a, b) in self._edges if b == j)

    def index_of(self, label) -> int:
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise BadVertexIndex(f"no vertex labelled {label!r}") from None

    def relabeled(self, perm) -> "Network":
        """Vertex ``v`` becomes ``perm[v]`` (``perm`` maps 1..n onto 1..n)."""
        edges = {(perm[i], perm[j]): w for (i, j), w in self._edges.items()}
        labels = [None] * self.n
        for v in self.vertices:
            labels[perm[v] - 1] = self.labels[v - 1]
        return Network(self.n, edges, labels)

    def adjacency(self) -> RatMatrix:
        return RatMatrix._raw(
            [[self.weight(i, j) for j in self.vertices] for i in self.vertices]
        )

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, frozenset(self._edges.items())))

    def __repr__(self):
        body = ", ".join(f"{i}->{j}: {w}" for (i, j), w in sorted(self._edges.items()))
        return f"Network(n={self.n}, {{{body}}})"


def adjacency(net: Network) -> RatMatrix:
    return net.adjacency()


@dataclass(frozen=True)
class StructuralSet:
    """Certificate that ``keep`` is a structural set of a network with ``n`` vertices."""

    n: int
    keep: tuple
    complement: tuple
    topo_order: tuple = field(default=())

    def __contains__(self, v):
        return v in self.keep


@dataclass(frozen=True)
class Branch:
    path: tuple

    @property
    def length(self) -> int:
        return len(self.path) - 1

    @property
    def interior(self):
        return self.path[1:-1]


def _check_vertices(net: Network, S) -> tuple:
    keep = tuple(sorted(set(S)))
    if not keep:
        raise EmptySet("the kept vertex set is empty")
    for v in keep:
        if not isinstance(v, int) or not 1 <= v <= net.n:
            raise BadVertexIndex(f"vertex {v!r} is not in 1..{net.n}")
    return keep


def _find_cycle(net: Network, verts):
    """Some non-loop cycle inside ``verts`` (as a vertex list), or None."""
    verts = set(verts)
    color = {v: 0 for v in verts}
    stack_path = []

    def dfs(v):
        color[v] = 1
        stack_path.append(v)
        for w in net.successors(v):
            if w == v or w not in verts:
                continue
            if color[w] == 1:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == 0:
                found = dfs(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in sorted(verts):
        if color[v] == 0:
            found = dfs(v)
            if found:
                return found
    return None


def validate_structural(net: Network, S) -> StructuralSet:
    """Check that ``S`` meets every non-loop cycle and that no complement vertex
    carries the loop weight ``l``.  Returns a certificate with a topological
    order of the complement (loops ignored)."""
    keep = _check_vertices(net, S)
    comp = tuple(v for v in net.vertices if v not in keep)
    cset = set(comp)
    indeg = {v: 0 for v in comp}
    for (i, j) in net._edges:
        if i != j and i in cset and j in cset:
            indeg[j] += 1
    ready = sorted(v for v in comp if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in net.successors(v):
            if w != v and w in cset:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
                    ready.sort()
    if len(order) != len(comp):
        raise CycleInComplement(_find_cycle(net, comp))
    for v in comp:
        if net.weight(v, v).is_lambda():
            raise LoopWeightIsLambda(v)
    return StructuralSet(net.n, keep, comp, tuple(order))


def _as_structural(net: Network, S) -> StructuralSet:
    if isinstance(S, StructuralSet):
        if S.n != net.n:
            raise ValueError("structural set belongs to a different network")
        return S
    return validate_structural(net, S)


def validate_lambda0(net: Network, S, lambda0) -> bool:
    """True iff ``w(i,i)(lambda0) != lambda0`` for every complement vertex."""
    S = _as_structural(net, S)
    z = as_gauss(lambda0)
    for v in S.complement:
        if net.weight(v, v)(z) == z:
            return False
    return True


def structural_sets(net: Network, size: int):
    """All structural sets of the given size, in lexicographic order."""
    out = []
    for combo in combinations(net.vertices, size):
        try:
            out.append(validate_structural(net, combo))
        except (CycleInComplement, LoopWeightIsLambda):
            continue
    return out


def branches(net: Network, S, i: int, j: int):
    """Every branch from ``i`` to ``j``: a path whose interior lies in the
    complement of ``S``.  A cycle (``i == j``) counts when its interior does."""
    S = _as_structural(net, S)
    comp = set(S.complement)
    out = []

    def walk(path, seen):
        v = path[-1]
        for w in net.successors(v):
            if w == j:
                out.append(Branch(tuple(path + [w])))
            if w in comp and w not in seen and w != j and w != v:
                seen.add(w)
                walk(path + [w], seen)
                seen.discard(w)

    walk([i], {i})
    out.sort(key=lambda b: (b.length, b.path))
    return out


def branch_weight(b: Branch | tuple, net: Network) -> RatFunc:
    path = b.path if isinstance(b, Branch) else tuple(b)
    w = net.weight(path[0], path[1])
    for k in range(1, len(path) - 1):
        v = path[k]
        w = w * net.weight(v, path[k + 1]) / (LAMBDA - net.weight(v, v))
    return w


def _suffix_sums(net: Network, S: StructuralSet, j: int):
    """``f(a)`` = summed weight of branch tails from complement vertex ``a`` to
    ``j``, each interior vertex (including ``a``) contributing its
    ``1/(l - loop)`` factor.  Memoised over the complement DAG."""
    comp = set(S.complement)

    @lru_cache(maxsize=None)
    def f(a):
        acc = ZERO_R
        for w in net.successors(a):
            if w == a:
                continue
            if w == j:
                acc = acc + net.weight(a, w)
            if w in comp and w != j:
                acc = acc + net.weight(a, w) * f(w)
        return acc / (LAMBDA - net.weight(a, a))

    return f


def reduced_entry(net: Network, S, i: int, j: int) -> RatFunc:
    """Sum of branch weights over all branches from ``i`` to ``j``."""
    S = _as_structural(net, S)
    if i in S.complement:
        # branches starting inside the complement must avoid revisiting i;
        # the DAG recursion does not know about i, so enumerate instead
        acc = ZERO_R
        for b in branches(net, S, i, j):
            acc = acc + branch_weight(b, net)
        return acc
    comp = set(S.complement)
    f = _suffix_sums(net, S, j)
    acc = ZERO_R
    for w in net.successors(i):
        if w == j:
            acc = acc + net.weight(i, w)
        if w in comp and w != j:
            acc = acc + net.weight(i, w) * f(w)
    return acc


def branches_by_length(net: Network, S, i: int, j: int, p: int) -> RatFunc:
    """Sum of weights of branches from ``i`` to ``j`` of length exactly ``p``."""
    if p < 1:
        raise ValueError("branch length must be at least 1")
    acc = ZERO_R
    for b in branches(net, S, i, j):
        if b.length == p:
            acc = acc + branch_weight(b, net)
    return acc

