"""Exact dense linear algebra over Q(i) and over the rational-function field.

Matrices are plain lists of rows.  The elimination routines only need
``+ - * /`` and truthiness (nonzero) from the entries, so they work for
:class:`GaussianRational` and :class:`RatFunc` alike.  :class:`RatMatrix`
is the immutable square-matrix type used across the package.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .ratfield import (
    DEFAULT_POLE_TOL,
    LAMBDA,
    ONE_G,
    ONE_P,
    ONE_R,
    ZERO_G,
    ZERO_P,
    ZERO_R,
    GaussianRational,
    Poly,
    RatFunc,
    as_gauss,
    as_ratfunc,
)

__all__ = [
    "SingularMatrix",
    "RatMatrix",
    "rref",
    "nullspace",
    "solve",
    "solve_particular",
    "inverse",
    "det",
    "det_poly",
    "rank",
    "matmul",
    "matvec",
    "identity",
    "canonical_basis",
    "reduce_modulo",
    "in_span",
    "gauss_matrix",
    "numeric_nullspace",
]


class SingularMatrix(ArithmeticError):
    pass


def _zero_like(x):
    if isinstance(x, RatFunc):
        return ZERO_R
    return ZERO_G


def _one_like(x):
    if isinstance(x, RatFunc):
        return ONE_R
    return ONE_G


def _default_key(x):
    if isinstance(x, RatFunc):
        return x.total_degree
    if isinstance(x, GaussianRational):
        return 0
    return 0


def identity(n, one=ONE_G, zero=ZERO_G):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    zero = _zero_like(a[0][0]) if a[0] else ZERO_G
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                x = row[k]
                if x:
                    y = b[k][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def matvec(a, v):
    out = []
    for row in a:
        acc = ZERO_G if not row else _zero_like(row[0])
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(rows, pivot_key=_default_key):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``.

    Among the candidate rows of a column the pivot with the smallest
    ``pivot_key`` is used (lowest total degree for rational functions).
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best, best_key = None, None
        for i in range(r, nrows):
            x = m[i][c]
            if x:
                k = pivot_key(x)
                if best is None or k < best_key:
                    best, best_key = i, k
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        p = m[r][c]
        inv = _one_like(p) / p
        m[r] = [x * inv if x else x for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of ``{x : rows @ x = 0}``, one vector per free column with a 1 there."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[ONE_G if i == j else ZERO_G for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    r, pivots = rref(rows)
    zero, one = _zero_like(rows[0][0]), _one_like(rows[0][0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            x = r[i][f]
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def canonical_basis(vectors):
    """Row-reduced basis of ``span(vectors)``: unique for the subspace, and each
    vector has first nonzero entry 1."""
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return r[: len(pivots)]


def reduce_modulo(v, basis_rref):
    """Canonical representative of ``v`` modulo ``span(basis_rref)`` (an rref basis)."""
    v = list(v)
    for b in basis_rref:
        p = next(k for k, x in enumerate(b) if x)
        f = v[p]
        if f:
            v = [x - f * y for x, y in zip(v, b)]
    return v


def in_span(v, vectors) -> bool:
    if not any(v):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(v)]) == rank(list(vectors))


def solve(a, b):
    """Solve ``a @ X = b`` for square nonsingular ``a``; ``b`` is a list of rows."""
    n = len(a)
    if n == 0:
        return []
    width = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n : n + width] for row in r[:n]]


def solve_particular(a, b):
    """One solution of ``a @ x = b`` (free variables set to 0), or None when
    the system is inconsistent.  ``a`` may be singular or rectangular."""
    if not a:
        return []
    ncols = len(a[0])
    aug = [list(row) + [y] for row, y in zip(a, b)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    zero = _zero_like(a[0][0])
    x = [zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = r[i][ncols]
    return x


def inverse(a):
    n = len(a)
    if n == 0:
        return []
    eye = identity(n, _one_like(a[0][0]), _zero_like(a[0][0]))
    return solve(a, eye)


def det(a, pivot_key=_default_key):
    """Determinant by elimination over the entry field."""
    n = len(a)
    if n == 0:
        return ONE_G
    m = [list(r) for r in a]
    result = _one_like(m[0][0])
    for c in range(n):
        best, best_key = None, None
        for i in range(c, n):
            if m[i][c]:
                k = pivot_key(m[i][c])
                if best is None or k < best_key:
                    best, best_key = i, k
        if best is None:
            return _zero_like(m[0][0])
        if best != c:
            m[c], m[best] = m[best], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f / p
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[c])]
    return result


def det_poly(a) -> Poly:
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    n = len(a)
    if n == 0:
        return ONE_P
    m = [list(r) for r in a]
    sign = 1
    prev = ONE_P
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return ZERO_P
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * p - m[i][k] * m[k][j]).exact_div(prev)
        prev = p
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def gauss_matrix(rows):
    """Coerce a nested list of numbers/literals to Gaussian rationals."""
    return [[as_gauss(x) for x in row] for row in rows]


def numeric_nullspace(a: np.ndarray, tol: float = 1e-9):
    """Orthonormal null-space basis (columns) from the SVD."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return np.eye(a.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(a)
    scale = max(1.0, s[0]) if s.size else 1.0
    rank_ = int(np.sum(s > tol * scale))
    return vh[rank_:].conj().T


class RatMatrix:
    """Immutable square matrix with :class:`RatFunc` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(as_ratfunc(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def _raw(cls, rows):
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def identity(cls, n):
        return cls._raw(identity(n, ONE_R, ZERO_R))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return RatMatrix._raw(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        return RatMatrix._raw(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __matmul__(self, other):
        return RatMatrix._raw(matmul(self.rows, other.rows))

    def is_constant(self) -> bool:
        return all(x.is_constant() for r in self.rows for x in r)

    def block(self, rows, cols):
        """Rectangular block as a list of rows (0-based index lists)."""
        return [[self.rows[i][j] for j in cols] for i in rows]

    def submatrix(self, idx) -> "RatMatrix":
        return RatMatrix._raw(self.block(idx, idx))

    def permuted(self, perm) -> "RatMatrix":
        """Simultaneous row/column permutation: entry (a, b) is old (perm[a], perm[b])."""
        return self.submatrix(list(perm))

    def minus_lambda(self) -> list:
        return [
            [x - LAMBDA if i == j else x for j, x in enumerate(r)]
            for i, r in enumerate(self.rows)
        ]

    def evaluate(self, z):
        """Exact value at ``z``; raises :class:`PoleError` on a pole."""
        z = as_gauss(z)
        out = []
        for r in self.rows:
            row = []
            for x in r:
                if x.den.degree == 0:
                    row.append(x.num(z) if x.num else ZERO_G)
                else:
                    row.append(x(z))
            out.append(row)
        return out

    def evaluate_numeric(self, z: complex, pole_tol: float = DEFAULT_POLE_TOL) -> np.ndarray:
        return np.array(
            [[x.eval_numeric(z, pole_tol) for x in r] for r in self.rows], dtype=complex
        ).reshape(self.dim, self.dim)

    def constant_rows(self):
        if not self.is_constant():
            raise ValueError("matrix entries depend on l")
        return [[x.constant_value() for x in r] for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[complex(c) for c in r] for r in self.constant_rows()], dtype=complex
        ).reshape(self.dim, self.dim)

    def literals(self):
        return [[x.literal() for x in r] for r in self.rows]

    def equal_up_to_permutation(self, other: "RatMatrix"):
        """A permutation ``p`` with ``self.permuted(p) == other``, or None."""
        if self.dim != other.dim:
            return None
        n = self.dim
        for p in permutations(range(n)):
            if all(self.rows[p[a]][p[b]] == other.rows[a][b] for a in range(n) for b in range(n)):
                return p
        return None

    def __repr__(self):
        return f"RatMatrix({self.literals()!r})"

    def table(self) -> str:
        cells = self.literals()
        if not cells:
            return "[]"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def as_ratmatrix(m) -> RatMatrix:
    if isinstance(m, RatMatrix):
        return m
    return RatMatrix(m)

