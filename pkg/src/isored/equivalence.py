"""Isomorphism of weighted networks, spectral equivalence under a reduction
rule, and spectral equivalence of constant matrices by comparing all of
their reductions of a given size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import RuleInapplicable, SingularComplement, ValidationError
from .linalg import RatMatrix, as_ratmatrix
from .netgraph import Network, structural_sets
from .reduction import Partition, reduce_matrix, reduce_onto
from .spectra import SpectrumMultiset, shared_spectrum, spectrum

__all__ = [
    "ReductionRule",
    "EquivalenceWitness",
    "MatrixEquivalence",
    "isomorphic",
    "in_G_pi",
    "keep_listed",
    "keep_loops",
    "min_cycle_cover",
    "apply_rule",
    "spectrally_equivalent",
    "matrix_spectrally_equivalent",
    "seq_condition",
    "seq_report",
]


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def _signature(net: Network, v: int):
    outs = sorted(net.weight(v, w).key() for w in net.successors(v) if w != v)
    ins = sorted(net.weight(u, v).key() for u in net.predecessors(v) if u != v)
    return (net.weight(v, v).key(), tuple(outs), tuple(ins))


def isomorphic(G: Network, H: Network):
    """A weight-preserving bijection ``{v_G: v_H}``, or None."""
    if G.n != H.n or len(G.edges) != len(H.edges):
        return None
    sg = {v: _signature(G, v) for v in G.vertices}
    sh = {v: _signature(H, v) for v in H.vertices}
    if sorted(sg.values()) != sorted(sh.values()):
        return None
    pool = {}
    for v, s in sh.items():
        pool.setdefault(s, []).append(v)
    order = sorted(G.vertices, key=lambda v: (len(pool[sg[v]]), v))
    mapping, used = {}, set()

    def fits(v, h):
        for u, hu in mapping.items():
            if G.weight(v, u) != H.weight(h, hu) or G.weight(u, v) != H.weight(hu, h):
                return False
        return G.weight(v, v) == H.weight(h, h)

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        for h in pool[sg[v]]:
            if h not in used and fits(v, h):
                mapping[v] = h
                used.add(h)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(h)
        return False

    return dict(sorted(mapping.items())) if extend(0) else None


def in_G_pi(G: Network) -> bool:
    """True iff every edge weight has numerator degree at most denominator degree."""
    return all(w.is_proper() for w in G.edges.values())


# ---------------------------------------------------------------------------
# reduction rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionRule:
    """``selector`` maps a network to the vertices (1-based) to keep."""

    name: str
    selector: object = field(compare=False)

    def select(self, net: Network):
        return sorted(set(self.selector(net)))


def keep_listed(labels) -> ReductionRule:
    """Keep the vertices whose labels are listed (labels survive reductions,
    so the rule keeps meaning the same vertices when applied repeatedly)."""
    labels = tuple(labels)

    def sel(net):
        return [v for v in net.vertices if net.labels[v - 1] in labels]

    return ReductionRule("keep:" + ",".join(str(x) for x in labels), sel)


def keep_loops() -> ReductionRule:
    """Keep the vertices that carry a loop."""
    return ReductionRule("loops", lambda net: [v for v in net.vertices if net.weight(v, v)])


def min_cycle_cover() -> ReductionRule:
    """Keep the lexicographically first structural set of minimum size."""

    def sel(net):
        for size in range(1, net.n + 1):
            found = structural_sets(net, size)
            if found:
                return list(found[0].keep)
        return list(net.vertices)

    return ReductionRule("mincover", sel)


def apply_rule(net: Network, rule: ReductionRule) -> Network:
    keep = rule.select(net)
    if len(keep) <= 1:
        raise RuleInapplicable(f"rule {rule.name} selects {len(keep)} vertex/vertices")
    if len(keep) == net.n:
        return net
    return reduce_onto(net, keep)


# ---------------------------------------------------------------------------
# spectral equivalence of networks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceWitness:
    m: int
    k: int
    iso: dict


def _iterates(net, rule, limit):
    """Lazily yields ``R^0, R^1, ...`` up to ``limit``; stops early (recording
    the failure) when the rule becomes inapplicable."""
    out = [net]
    state = {"failed": None}

    def get(m):
        while len(out) <= m and state["failed"] is None:
            try:
                out.append(apply_rule(out[-1], rule))
            except RuleInapplicable as exc:
                state["failed"] = exc
        return out[m] if m < len(out) else None

    return get, state


def spectrally_equivalent(G: Network, H: Network, rule: ReductionRule, max_m: int, max_k: int,
                          include_zero: bool = True):
    """First ``(m, k)`` (ordered by ``m + k``, then ``m``) with
    ``R^m(G)`` isomorphic to ``R^k(H)``, or None.  ``include_zero=False``
    demands at least one application on each side."""
    for X in (G, H):
        if not in_G_pi(X):
            raise ValidationError("networks must have proper edge weights")
    start = 0 if include_zero else 1
    getG, stG = _iterates(G, rule, max_m)
    getH, stH = _iterates(H, rule, max_k)
    pairs = sorted(
        ((m, k) for m in range(start, max_m + 1) for k in range(start, max_k + 1)),
        key=lambda p: (p[0] + p[1], p[0]),
    )
    for m, k in pairs:
        a, b = getG(m), getH(k)
        if a is None or b is None:
            continue
        iso = isomorphic(a, b)
        if iso is not None:
            return EquivalenceWitness(m, k, iso)
    failed = stG["failed"] or stH["failed"]
    if failed is not None:
        raise failed
    return None


# ---------------------------------------------------------------------------
# constant matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixEquivalence:
    equivalent: bool
    witness: tuple | None
    reductions_a: dict
    reductions_b: dict

    def __bool__(self):
        return self.equivalent


def _all_reductions(M: RatMatrix, dim: int):
    out = {}
    for keep in combinations(range(1, M.dim + 1), dim):
        try:
            out[keep] = reduce_matrix(M, Partition(M.dim, keep))
        except SingularComplement:
            continue
    return out


def matrix_spectrally_equivalent(M1, M2, dim: int) -> MatrixEquivalence:
    """Whether some size-``dim`` reduction of ``M1`` equals some size-``dim``
    reduction of ``M2`` up to a simultaneous row/column permutation.  The
    witness is ``(keep_1, keep_2, perm)``."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    M1, M2 = as_ratmatrix(M1), as_ratmatrix(M2)
    ra, rb = _all_reductions(M1, dim), _all_reductions(M2, dim)
    for s1, r1 in ra.items():
        for s2, r2 in rb.items():
            perm = r1.equal_up_to_permutation(r2)
            if perm is not None:
                return MatrixEquivalence(True, (s1, s2, perm), ra, rb)
    return MatrixEquivalence(False, None, ra, rb)


@dataclass(frozen=True)
class SeqReport:
    holds: bool
    shared: SpectrumMultiset
    spectra_equal: bool


def seq_report(M, part) -> SeqReport:
    """Whether the eliminated block shares no eigenvalue with ``M``, and
    whether the reduced matrix then has exactly the spectrum of ``M``."""
    M = as_ratmatrix(M)
    part = part if isinstance(part, Partition) else Partition(M.dim, part)
    if not part.complement0:
        return SeqReport(True, SpectrumMultiset(), True)
    shared = shared_spectrum(M, M.submatrix(part.complement0))
    holds = len(shared) == 0
    equal = spectrum(reduce_matrix(M, part)) == spectrum(M)
    return SeqReport(holds, shared, equal)


def seq_condition(M, part) -> bool:
    return seq_report(M, part).holds
