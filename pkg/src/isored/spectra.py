"""Characteristic functions, spectra as multisets, eigenvectors,
generalized-eigenvector chains, multiplicities and Jordan structure.

Roots of a characteristic numerator are found exactly whenever they lie in
Q(i): square-free factors of degree one and two are solved in closed form,
and numeric roots of higher-degree factors are snapped to nearby Gaussian
rationals and kept only if they evaluate to zero exactly.  Whatever is left
stays numeric, polished by Newton steps and checked against a backward-error
bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ChainTerminated, NotAnEigenvalue, NumericFailure
from .linalg import (
    RatMatrix,
    as_ratmatrix,
    canonical_basis,
    det_poly,
    identity,
    matmul,
    matvec,
    nullspace,
    numeric_nullspace,
    rank,
    reduce_modulo,
    solve_particular,
)
from .ratfield import (
    ONE_G,
    ONE_P,
    GaussianRational,
    Poly,
    RatFunc,
    as_gauss,
    gauss_sqrt,
    poly_gcd,
    squarefree,
)

__all__ = [
    "Eigenvalue",
    "SpectrumMultiset",
    "ChainData",
    "MultiplicityReport",
    "MATCH_TOL",
    "RESIDUAL_TOL",
    "char_function",
    "char_numerator",
    "poly_roots",
    "spectrum",
    "multiset_op",
    "shared_spectrum",
    "eigenvectors_at",
    "canonical_vector",
    "canonical_chain",
    "generalized_chain",
    "multiplicities",
    "jordan_blocks",
    "jordan_structure",
]

MATCH_TOL = 1e-7
RESIDUAL_TOL = 1e-9


# ---------------------------------------------------------------------------
# multisets of eigenvalues
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eigenvalue:
    """One distinct root with its multiplicity.  ``value`` is a
    :class:`GaussianRational` when ``exact`` and a ``complex`` otherwise;
    ``residual`` is the backward error of a numeric root (0 for exact ones)."""

    value: object
    multiplicity: int
    exact: bool = True
    residual: float = 0.0

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    def __complex__(self):
        return complex(self.value)

    def literal(self) -> str:
        if self.exact:
            return str(self.value)
        z = complex(self.value)
        return f"~{z.real:.12g}{z.imag:+.12g}i"


def _sort_key(e: Eigenvalue):
    z = complex(e.value)
    return (round(z.real, 9), round(z.imag, 9), not e.exact)


def _same(a: Eigenvalue, b: Eigenvalue, tol: float) -> bool:
    if a.exact and b.exact:
        return a.value == b.value
    return abs(complex(a.value) - complex(b.value)) <= tol


class SpectrumMultiset:
    """Multiset of eigenvalues.  Exact entries compare by equality, numeric
    entries by distance ``<= tol`` (greedy matching after sorting)."""

    __slots__ = ("entries", "tol")

    def __init__(self, entries=(), tol: float = MATCH_TOL):
        self.tol = tol
        merged = []
        for e in entries:
            if not isinstance(e, Eigenvalue):
                e = _as_eigenvalue(e)
            for k, m in enumerate(merged):
                if _same(m, e, tol) and m.exact == e.exact:
                    merged[k] = Eigenvalue(
                        m.value, m.multiplicity + e.multiplicity, m.exact, max(m.residual, e.residual)
                    )
                    break
            else:
                merged.append(e)
        self.entries = tuple(sorted(merged, key=_sort_key))

    @classmethod
    def from_values(cls, values, tol: float = MATCH_TOL) -> "SpectrumMultiset":
        return cls([_as_eigenvalue(v) for v in values], tol)

    def __len__(self):
        return sum(e.multiplicity for e in self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def is_exact(self) -> bool:
        return all(e.exact for e in self.entries)

    def values(self):
        """Flat list with repetitions."""
        return [e.value for e in self.entries for _ in range(e.multiplicity)]

    def as_complex(self):
        return [complex(v) for v in self.values()]

    def exact_values(self):
        return [e.value for e in self.entries if e.exact]

    def multiplicity(self, z) -> int:
        probe = _as_eigenvalue(z)
        return sum(e.multiplicity for e in self.entries if _same(e, probe, self.tol))

    def _flat(self):
        return [Eigenvalue(e.value, 1, e.exact, e.residual) for e in self.entries for _ in range(e.multiplicity)]

    def union(self, other: "SpectrumMultiset") -> "SpectrumMultiset":
        return SpectrumMultiset(self.entries + tuple(other.entries), min(self.tol, other.tol))

    def difference(self, other: "SpectrumMultiset") -> "SpectrumMultiset":
        left = self._flat()
        used = [False] * len(left)
        tol = max(self.tol, other.tol)
        for b in other._flat():
            for k, a in enumerate(left):
                if not used[k] and _same(a, b, tol):
                    used[k] = True
                    break
        return SpectrumMultiset([a for a, u in zip(left, used) if not u], self.tol)

    def intersection(self, other: "SpectrumMultiset") -> "SpectrumMultiset":
        return self.difference(self.difference(other))

    def issubset(self, other: "SpectrumMultiset") -> bool:
        return len(self.difference(other)) == 0

    def matches(self, other: "SpectrumMultiset") -> bool:
        return len(self) == len(other) and self.issubset(other) and other.issubset(self)

    def __eq__(self, other):
        if not isinstance(other, SpectrumMultiset):
            return NotImplemented
        return self.matches(other)

    __hash__ = None

    def __repr__(self):
        body = ", ".join(
            e.literal() + (f" x{e.multiplicity}" if e.multiplicity > 1 else "") for e in self.entries
        )
        return "{" + body + "}"


def _as_eigenvalue(v) -> Eigenvalue:
    if isinstance(v, Eigenvalue):
        return v
    if isinstance(v, (complex, float, np.complexfloating, np.floating)):
        return Eigenvalue(complex(v), 1, exact=False)
    return Eigenvalue(as_gauss(v), 1, exact=True)


def multiset_op(a: SpectrumMultiset, b: SpectrumMultiset, op: str):
    if op == "union":
        return a.union(b)
    if op == "difference":
        return a.difference(b)
    if op == "subset":
        return a.issubset(b)
    raise ValueError(f"unknown multiset operation {op!r}")


# ---------------------------------------------------------------------------
# characteristic function
# ---------------------------------------------------------------------------


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def char_function(M) -> RatFunc:
    """``det(M(l) - l*I)`` as a reduced rational function.

    Each row is cleared of denominators, the polynomial determinant is taken
    fraction-free, and the row multipliers are divided back out.
    """
    M = as_ratmatrix(M)
    if M.dim == 0:
        return RatFunc.constant(1)
    rows = M.minus_lambda()
    scale = ONE_P
    prows = []
    for r in rows:
        L = ONE_P
        for x in r:
            if x:
                L = _poly_lcm(L, x.den)
        scale = scale * L
        prows.append([(x.num * L.exact_div(x.den)) if x else Poly() for x in r])
    return RatFunc(det_poly(prows), scale)


def char_numerator(M) -> Poly:
    return char_function(M).num


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


def _snap(z: complex):
    out = []
    for bound in (1, 12, 1000, 10**6):
        g = GaussianRational.from_complex(z, bound)
        if g not in out:
            out.append(g)
    return out


def _backward_error(p: Poly, z: complex) -> float:
    cs = p.complex_coeffs()
    scale = sum(abs(c) * abs(z) ** k for k, c in enumerate(cs))
    return abs(p.eval_numeric(z)) / scale if scale else 0.0


def _polish(p: Poly, z: complex, steps: int = 50) -> complex:
    dp = p.derivative()
    best, best_err = z, _backward_error(p, z)
    for _ in range(steps):
        d = dp.eval_numeric(z)
        if d == 0:
            break
        z = z - p.eval_numeric(z) / d
        err = _backward_error(p, z)
        if err < best_err:
            best, best_err = z, err
        if err == 0.0:
            break
    return best


def _numeric_roots(p: Poly):
    cs = list(reversed(p.complex_coeffs()))
    return sorted(np.roots(cs), key=lambda z: (z.real, z.imag))


def _factor_roots(f: Poly, candidates):
    """Exact roots and numeric remainder of a square-free factor."""
    exact = []
    rest = f
    for c in candidates:
        if rest.degree >= 1 and not rest(c):
            exact.append(c)
            rest = rest.deflate(c)
    while rest.degree >= 1:
        if rest.degree == 1:
            exact.append(-rest.coeffs[0] / rest.coeffs[1])
            rest = Poly.constant(rest.lead)
            break
        if rest.degree == 2:
            c0, c1, c2 = rest.coeffs
            sq = gauss_sqrt(c1 * c1 - 4 * c2 * c0)
            if sq is not None:
                two_a = c2 * 2
                exact.extend([(-c1 + sq) / two_a, (-c1 - sq) / two_a])
                rest = Poly.constant(rest.lead)
            break
        found = None
        for z in _numeric_roots(rest):
            for g in _snap(complex(z)):
                if not rest(g):
                    found = g
                    break
            if found is not None:
                break
        if found is None:
            break
        exact.append(found)
        rest = rest.deflate(found)
    numeric = []
    if rest.degree >= 1:
        for z in _numeric_roots(rest):
            z = _polish(f, _polish(rest, complex(z)))
            err = _backward_error(f, z)
            if err > RESIDUAL_TOL:
                raise NumericFailure(f"root {z} of {f} has backward error {err:.3g}")
            numeric.append((z, err))
    return exact, numeric


def poly_roots(p: Poly, candidates=()) -> SpectrumMultiset:
    """Roots of ``p`` with multiplicity.  ``candidates`` are tried first."""
    candidates = [as_gauss(c) for c in candidates]
    entries = []
    for f, k in squarefree(p):
        exact, numeric = _factor_roots(f, candidates)
        entries.extend(Eigenvalue(z, k, True) for z in exact)
        entries.extend(Eigenvalue(z, k, False, err) for z, err in numeric)
    return SpectrumMultiset(entries)


def spectrum(M, candidates=()) -> SpectrumMultiset:
    """Eigenvalues of ``M(l)``: roots of the characteristic numerator."""
    return poly_roots(char_numerator(M), candidates)


def shared_spectrum(M, N) -> SpectrumMultiset:
    """Common eigenvalues of ``M`` and ``N``: the roots of the gcd of their
    characteristic numerators (each counted once per shared factor power)."""
    p, q = char_numerator(M), char_numerator(N)
    if p.degree < 1 or q.degree < 1:
        return SpectrumMultiset()
    return poly_roots(poly_gcd(p, q))


# ---------------------------------------------------------------------------
# eigenvectors and chains
# ---------------------------------------------------------------------------


def _shifted(M: RatMatrix, z: GaussianRational):
    rows = M.evaluate(z)
    return [[x - z if i == j else x for j, x in enumerate(r)] for i, r in enumerate(rows)]


def canonical_vector(v):
    """Scale so the first nonzero coordinate is 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        return list(v)
    inv = ONE_G / lead
    return [x * inv for x in v]


def _canonical_numeric(v, tol=1e-9):
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v) > tol * max(1.0, np.abs(v).max())))
    return v / v[k]


def eigenvectors_at(M, lambda0):
    """Basis of the ``lambda0``-eigenspace of ``M(lambda0)``.

    Exact (reduced row-echelon, each vector with leading entry 1) for a
    Gaussian-rational ``lambda0``; numeric columns otherwise.
    """
    M = as_ratmatrix(M)
    if isinstance(lambda0, (complex, float)) and not isinstance(lambda0, GaussianRational):
        a = M.evaluate_numeric(lambda0) - lambda0 * np.eye(M.dim)
        ns = numeric_nullspace(a)
        if ns.shape[1] == 0:
            raise NotAnEigenvalue(f"{lambda0} is not an eigenvalue")
        return [_canonical_numeric(ns[:, k]) for k in range(ns.shape[1])]
    z = as_gauss(lambda0)
    basis = nullspace(_shifted(M, z))
    if not basis:
        raise NotAnEigenvalue(f"{z} is not an eigenvalue")
    return canonical_basis(basis)


@dataclass(frozen=True)
class ChainData:
    """``vectors[0]`` is an eigenvector and ``N @ vectors[k+1] == vectors[k]``
    with ``N = M(lambda0) - lambda0*I``."""

    lambda0: GaussianRational
    vectors: tuple

    @property
    def depth(self) -> int:
        return len(self.vectors)

    def verify(self, M) -> bool:
        N = _shifted(as_ratmatrix(M), self.lambda0)
        if not any(self.vectors[0]) or any(matvec(N, self.vectors[0])):
            return False
        return all(
            matvec(N, self.vectors[k + 1]) == list(self.vectors[k]) for k in range(len(self.vectors) - 1)
        )


def _power_kernel(N, k):
    n = len(N)
    P = identity(n)
    for _ in range(k):
        P = matmul(P, N)
    return canonical_basis(nullspace(P)) if any(any(r) for r in P) else identity(n)


def canonical_chain(M, lambda0, vectors) -> ChainData:
    """Canonical form of a Jordan chain: its top vector, scaled so the
    eigenvector has leading entry 1 and reduced modulo the kernel of
    ``N^(depth-1)``; lower members are recomputed as ``N^j`` of the top."""
    M = as_ratmatrix(M)
    z = as_gauss(lambda0)
    N = _shifted(M, z)
    vectors = [[as_gauss(x) for x in v] for v in vectors]
    depth = len(vectors)
    top = vectors[-1]
    u = top
    for _ in range(depth - 1):
        u = matvec(N, u)
    lead = next((x for x in u if x), None)
    if lead is None:
        raise ValueError("chain collapses to the zero vector")
    top = [x / lead for x in top]
    if depth > 1:
        top = reduce_modulo(top, _power_kernel(N, depth - 1))
    out = [top]
    for _ in range(depth - 1):
        out.append(matvec(N, out[-1]))
    return ChainData(z, tuple(tuple(v) for v in reversed(out)))


def generalized_chain(M, lambda0, depth: int, u=None) -> ChainData:
    """A Jordan chain of length ``depth`` at ``lambda0``.

    With ``u`` given, the chain is grown from that eigenvector by solving
    ``N x = previous``.  Without it, the chain starts from a vector of exact
    rank ``depth`` and is returned in canonical form.  Raises
    :class:`ChainTerminated` (carrying the longest chain found) when no
    vector of the next rank exists.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    M = as_ratmatrix(M)
    z = as_gauss(lambda0)
    N = _shifted(M, z)
    kernel = canonical_basis(nullspace(N))
    if not kernel:
        raise NotAnEigenvalue(f"{z} is not an eigenvalue")
    if u is not None:
        chain = [[as_gauss(x) for x in u]]
        if not any(chain[0]) or any(matvec(N, chain[0])):
            raise ValueError("u is not an eigenvector at lambda0")
        while len(chain) < depth:
            x = solve_particular(N, chain[-1])
            if x is None:
                raise ChainTerminated(
                    f"no vector of rank {len(chain) + 1} at {z}",
                    ChainData(z, tuple(tuple(v) for v in chain)),
                )
            chain.append(reduce_modulo(x, kernel))
        return ChainData(z, tuple(tuple(v) for v in chain))

    kernels = [[], kernel]
    while len(kernels) <= depth:
        kernels.append(_power_kernel(N, len(kernels)))
        if len(kernels[-1]) == len(kernels[-2]):
            reached = len(kernels) - 2
            best = next(v for v in kernels[reached] if not _in_span(v, kernels[reached - 1]))
            partial = canonical_chain(M, z, _chain_from_top(N, best, reached))
            raise ChainTerminated(f"longest chain at {z} has length {reached}", partial)
    top = next(v for v in kernels[depth] if not _in_span(v, kernels[depth - 1]))
    return canonical_chain(M, z, _chain_from_top(N, top, depth))


def _in_span(v, basis):
    return not any(reduce_modulo(v, basis)) if basis else not any(v)


def _chain_from_top(N, top, depth):
    out = [top]
    for _ in range(depth - 1):
        out.append(matvec(N, out[-1]))
    return list(reversed(out))


# ---------------------------------------------------------------------------
# multiplicities and Jordan structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityReport:
    lambda0: object
    algebraic: int
    geometric: int
    defect: int | None

    def as_dict(self):
        return {
            "lambda0": str(self.lambda0),
            "algebraic": self.algebraic,
            "geometric": self.geometric,
            "defect": self.defect,
        }


def multiplicities(M, lambda0) -> MultiplicityReport:
    """Algebraic multiplicity as root multiplicity of the characteristic
    numerator, geometric as nullity at ``lambda0``.  The defect ``a - g`` is
    only meaningful for constant matrices and is ``None`` otherwise."""
    M = as_ratmatrix(M)
    z = as_gauss(lambda0)
    p = char_numerator(M)
    a = p.root_multiplicity(z) if p.degree >= 1 else 0
    g = M.dim - rank(_shifted(M, z))
    if a == 0 and g == 0:
        raise NotAnEigenvalue(f"{z} is not an eigenvalue")
    return MultiplicityReport(z, a, g, a - g if M.is_constant() else None)


def jordan_blocks(M, lambda0):
    """Sizes of the Jordan blocks of a constant matrix at ``lambda0``,
    ascending, from the ranks of powers of ``M - lambda0*I``."""
    M = as_ratmatrix(M)
    if not M.is_constant():
        raise ValueError("Jordan structure is defined for constant matrices only")
    z = as_gauss(lambda0)
    N = _shifted(M, z)
    n = M.dim
    ranks = [n]
    P = identity(n)
    while True:
        P = matmul(P, N)
        ranks.append(rank(P))
        if ranks[-1] == ranks[-2]:
            break
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    sizes = []
    for k in range(1, len(at_least)):
        sizes.extend([k] * (at_least[k - 1] - at_least[k]))
    if not sizes:
        raise NotAnEigenvalue(f"{z} is not an eigenvalue")
    return tuple(sorted(sizes))


def jordan_structure(M):
    """``{eigenvalue: block sizes}`` for a constant matrix whose eigenvalues
    are all Gaussian rationals."""
    sp = spectrum(M)
    if not sp.is_exact:
        raise NumericFailure("Jordan structure needs exact eigenvalues")
    return {e.value: jordan_blocks(M, e.value) for e in sp}
