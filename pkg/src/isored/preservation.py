"""Criteria deciding whether a generalized eigenvector survives a reduction.

All entrywise-style criteria compute, for each kept vertex ``i``, a left-hand
side ``L_i`` and ask whether ``L = c * u_S`` for one constant ``c``.  The
vector is preserved when such a ``c`` exists and ``c != -1``; ``c == -1`` is
reported separately as ``"degenerate"`` because the reduced relation
``R v_S - l0 v_S = (1 + c) u_S`` then loses its right-hand side.

Every verdict reports ``c`` in the entrywise convention.  The block form of
the criterion produces the opposite sign; :func:`check_block` stores its raw
constant in ``c_block`` (always ``-c``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ComplementNotDisconnected,
    ComplementNotSingleton,
    NotAnEigenvalue,
    NotLambda0Structural,
    PoleError,
    SingularComplement,
    SingularComplementAtLambda0,
    ZeroVectorInput,
)
from .linalg import RatMatrix, SingularMatrix, as_ratmatrix, matmul, matvec, solve
from .netgraph import Network, _as_structural, reduced_entry, validate_lambda0
from .ratfield import ZERO_G, GaussianRational, as_gauss
from .reduction import Partition, _as_partition, reduce_graph, reduce_matrix
from .spectra import (
    MultiplicityReport,
    SpectrumMultiset,
    multiplicities,
    shared_spectrum,
    spectrum,
)

__all__ = [
    "PreservationVerdict",
    "SufficientReport",
    "MultiplicityPreservation",
    "FIT_TOL",
    "check_entrywise",
    "check_single_vertex",
    "check_disconnected",
    "check_block",
    "check_all",
    "project_eigenvector",
    "lift_eigenvector",
    "check_sufficient",
    "multiplicity_preservation_report",
]

FIT_TOL = 1e-9

PRESERVED = "preserved"
NOT_PRESERVED = "not_preserved"
DEGENERATE = "degenerate"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class PreservationVerdict:
    """Outcome of one criterion.

    ``rows`` lists ``(vertex, L_i, u_i)`` for each kept vertex, so the
    inconsistency (or the consistent proportionality) can be inspected.
    """

    status: str
    c: object
    criterion: str
    rows: tuple
    exact: bool = True
    c_block: object = None
    chain_verified: bool | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def preserved(self) -> bool:
        return self.status == PRESERVED

    def same_outcome(self, other: "PreservationVerdict") -> bool:
        if self.status != other.status:
            return False
        if self.c is None or other.c is None:
            return self.c is other.c
        if self.exact and other.exact:
            return self.c == other.c
        return abs(complex(self.c) - complex(other.c)) <= 1e-7

    def as_dict(self):
        return {
            "criterion": self.criterion,
            "status": self.status,
            "preserved": self.preserved,
            "c": _lit(self.c),
            "exact": self.exact,
            "rows": [[v, _lit(lhs), _lit(u)] for v, lhs, u in self.rows],
            "chain_verified": self.chain_verified,
        }


def _lit(x):
    if x is None:
        return None
    if isinstance(x, GaussianRational):
        return str(x)
    z = complex(x)
    return f"~{z.real:.12g}{z.imag:+.12g}i"


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _is_numeric(z) -> bool:
    return isinstance(z, (complex, float, np.complexfloating, np.floating)) and not isinstance(
        z, GaussianRational
    )


def _scalar(z):
    return complex(z) if _is_numeric(z) else as_gauss(z)


def _vector(u, n):
    u = [_scalar(x) for x in u]
    if len(u) != n:
        raise ValueError(f"vector has {len(u)} entries, expected {n}")
    if all(not x for x in u):
        raise ZeroVectorInput("the vector is zero")
    return u


def _eval(f, z):
    return f.eval_numeric(z) if isinstance(z, complex) else f(z)


def _fit(lhs, u_S):
    """Constant ``c`` with ``lhs == c * u_S``, or None.  Exact data is fitted
    exactly; numeric data by least squares with residual ``<= FIT_TOL``."""
    if any(isinstance(x, complex) for x in list(lhs) + list(u_S)):
        a = np.array([complex(x) for x in u_S])
        b = np.array([complex(x) for x in lhs])
        if not np.any(np.abs(a) > FIT_TOL):
            return None if np.any(np.abs(b) > FIT_TOL) else "free"
        c = complex(np.vdot(a, b) / np.vdot(a, a))
        scale = max(1.0, float(np.abs(b).max()))
        return c if float(np.abs(b - c * a).max()) <= FIT_TOL * scale else None
    c = None
    for x, y in zip(lhs, u_S):
        if y:
            q = x / y
            if c is None:
                c = q
            elif q != c:
                return None
        elif x:
            return None
    return "free" if c is None else c


def _verdict(criterion, keep, lhs, u_S, **kw):
    c = _fit(lhs, u_S)
    exact = not any(isinstance(x, complex) for x in list(lhs) + list(u_S))
    rows = tuple(zip(keep, lhs, u_S))
    if c is None:
        return PreservationVerdict(NOT_PRESERVED, None, criterion, rows, exact, **kw)
    if isinstance(c, str):
        # u vanishes on S: any c fits, so the restriction carries no information
        return PreservationVerdict(UNDETERMINED, None, criterion, rows, exact, **kw)
    minus_one = (c == -1) if exact else abs(c + 1) <= FIT_TOL
    return PreservationVerdict(DEGENERATE if minus_one else PRESERVED, c, criterion, rows, exact, **kw)


def _prepare(net: Network, S, lambda0, u):
    S = _as_structural(net, S)
    z = _scalar(lambda0)
    u = _vector(u, net.n)
    if isinstance(z, GaussianRational):
        if not validate_lambda0(net, S, z):
            raise NotLambda0Structural(f"a complement loop weight equals {z} there")
    else:
        for v in S.complement:
            if abs(net.weight(v, v).eval_numeric(z) - z) <= FIT_TOL:
                raise NotLambda0Structural(f"loop weight at {v} equals {z} there")
    return S, z, u


def _chain_check(net, S, z, u, v, c):
    """``R_S(z) v_S - z v_S == (1 + c) u_S`` for the supplied full vector ``v``."""
    v = [_scalar(x) for x in v]
    R = reduce_graph(net, S).adjacency()
    vS = [v[k - 1] for k in S.keep]
    uS = [u[k - 1] for k in S.keep]
    if isinstance(z, complex) or any(isinstance(x, complex) for x in vS + uS + [c]):
        vS_, uS_ = np.array(vS, dtype=complex), np.array(uS, dtype=complex)
        left = R.evaluate_numeric(complex(z)) @ vS_ - complex(z) * vS_
        return bool(np.allclose(left, (1 + complex(c)) * uS_, atol=1e-7, rtol=0))
    left = [x - z * y for x, y in zip(matvec(R.evaluate(z), vS), vS)]
    return left == [(1 + c) * y for y in uS]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def entrywise_rows(net: Network, S, lambda0, u):
    """``L_i = sum_l R_il(l0) / (l0 - w(l,l)(l0)) * u_l`` over complement ``l``."""
    S, z, u = _prepare(net, S, lambda0, u)
    out = []
    for i in S.keep:
        acc = 0j if isinstance(z, complex) else ZERO_G
        for l in S.complement:
            if not u[l - 1]:
                continue
            r = reduced_entry(net, S, i, l)
            if r:
                acc = acc + _eval(r, z) / (z - _eval(net.weight(l, l), z)) * u[l - 1]
        out.append(acc)
    return out


def check_entrywise(net: Network, S, lambda0, u, v=None) -> PreservationVerdict:
    """Branch-sum criterion.  With ``v`` (the next chain member of ``u`` on
    the full network) also checks the reduced relation
    ``R_S(l0) v_S - l0 v_S = (1 + c) u_S``."""
    S, z, u = _prepare(net, S, lambda0, u)
    lhs = entrywise_rows(net, S, z, u)
    verdict = _verdict("entrywise", S.keep, lhs, [u[k - 1] for k in S.keep])
    if v is not None and verdict.preserved:
        ok = _chain_check(net, S, z, u, v, verdict.c)
        verdict = PreservationVerdict(
            verdict.status, verdict.c, verdict.criterion, verdict.rows, verdict.exact, chain_verified=ok
        )
    return verdict


def check_single_vertex(net: Network, S, lambda0, u) -> PreservationVerdict:
    """One eliminated vertex ``j``: the column ``(w(i,j)(l0))_{i in S}`` must be
    proportional to ``u_S``.  When ``u_j == 0`` the eliminated coordinate
    contributes nothing and the vector is kept with ``c = 0``."""
    S, z, u = _prepare(net, S, lambda0, u)
    if len(S.complement) != 1:
        raise ComplementNotSingleton(f"complement {S.complement} is not a single vertex")
    (j,) = S.complement
    keep = S.keep
    uS = [u[k - 1] for k in keep]
    col = [_eval(net.weight(i, j), z) for i in keep]
    uj = u[j - 1]
    if not uj:
        zero = 0j if isinstance(z, complex) else ZERO_G
        return _verdict("single_vertex", keep, [zero] * len(keep), uS, extra={"column": col})
    factor = uj / (z - _eval(net.weight(j, j), z))
    cp = _fit(col, uS)
    if cp is None:
        return PreservationVerdict(
            NOT_PRESERVED, None, "single_vertex", tuple(zip(keep, [x * factor for x in col], uS)),
            not isinstance(z, complex), extra={"column": col},
        )
    return _verdict("single_vertex", keep, [x * factor for x in col], uS, extra={"column": col})


def check_disconnected(net: Network, S, lambda0, u) -> PreservationVerdict:
    """Complement without internal edges: only direct edges ``i -> l`` count."""
    S, z, u = _prepare(net, S, lambda0, u)
    comp = set(S.complement)
    for (a, b) in net.edges:
        if a != b and a in comp and b in comp:
            raise ComplementNotDisconnected(f"edge {a}->{b} lies inside the complement")
    lhs = []
    for i in S.keep:
        acc = 0j if isinstance(z, complex) else ZERO_G
        for l in S.complement:
            w = net.weight(i, l)
            if w and u[l - 1]:
                acc = acc + _eval(w, z) / (z - _eval(net.weight(l, l), z)) * u[l - 1]
        lhs.append(acc)
    return _verdict("disconnected", S.keep, lhs, [u[k - 1] for k in S.keep])


def _blocks_at(M: RatMatrix, part: Partition, z):
    rows = M.evaluate(z)
    kk, cc = part.keep0, part.complement0
    A = [[rows[i][j] for j in cc] for i in kk]
    B = [[rows[i][j] for j in kk] for i in cc]
    K = [[rows[i][j] - z if i == j else rows[i][j] for j in cc] for i in cc]
    D = [[rows[i][j] for j in kk] for i in kk]
    return A, B, K, D


def check_block(M, part, lambda0, u_full) -> PreservationVerdict:
    """Block criterion ``M_SC(l0) (M_CC(l0) - l0 I)^-1 u_C = c_block u_S``.

    Also evaluates ``M_SC K^-2 M_CS u_S`` (``K = M_CC(l0) - l0 I``), which for
    an eigenvector ``u`` equals ``c * u_S``; ``extra["squared_agrees"]``
    records whether it does.
    """
    M = as_ratmatrix(M)
    part = _as_partition(M.dim, part)
    z = as_gauss(lambda0)
    u = [as_gauss(x) for x in _vector(u_full, M.dim)]
    A, B, K, _ = _blocks_at(M, part, z)
    uS = [u[k] for k in part.keep0]
    uC = [u[k] for k in part.complement0]
    if not uC:
        return _verdict("block", part.keep, [ZERO_G] * len(uS), uS, c_block=ZERO_G)
    try:
        x = [r[0] for r in solve(K, [[y] for y in uC])]
    except SingularMatrix:
        raise SingularComplementAtLambda0(f"M_CC({z}) - {z}*I is singular") from None
    raw = matvec(A, x)
    lhs = [-y for y in raw]
    verdict = _verdict("block", part.keep, lhs, uS)
    c_block = None if verdict.c is None else -verdict.c
    # squared form, meaningful when u is an eigenvector
    y = [r[0] for r in solve(K, [[t] for t in matvec(B, uS)])]
    y = [r[0] for r in solve(K, [[t] for t in y])]
    sq = matvec(A, y)
    c_sq = _fit(sq, uS)
    is_eig = not any(matvec([[a - z if i == j else a for j, a in enumerate(r)] for i, r in enumerate(M.evaluate(z))], u))
    agrees = None
    if is_eig:
        agrees = (c_sq == verdict.c) if verdict.c is not None else (c_sq is None)
    return PreservationVerdict(
        verdict.status, verdict.c, "block", verdict.rows, True, c_block=c_block,
        extra={"squared_c": c_sq if not isinstance(c_sq, str) else None, "squared_agrees": agrees},
    )


def check_all(net: Network, S, lambda0, u):
    """Every criterion whose precondition holds, plus whether they agree."""
    S = _as_structural(net, S)
    out = {"entrywise": check_entrywise(net, S, lambda0, u)}
    if len(S.complement) == 1:
        out["single_vertex"] = check_single_vertex(net, S, lambda0, u)
    try:
        out["disconnected"] = check_disconnected(net, S, lambda0, u)
    except ComplementNotDisconnected:
        pass
    try:
        out["block"] = check_block(net.adjacency(), Partition(net.n, S.keep), lambda0, u)
    except SingularComplementAtLambda0:
        pass
    ref = out["entrywise"]
    agree = all(v.same_outcome(ref) for v in out.values())
    return out, agree


# ---------------------------------------------------------------------------
# eigenvector bijection
# ---------------------------------------------------------------------------


def project_eigenvector(u_full, part):
    keep = part.keep0 if isinstance(part, Partition) else [k - 1 for k in sorted(set(part))]
    return [_scalar(u_full[k]) for k in keep]


def lift_eigenvector(u_S, M, part, lambda0):
    """``u_C = -(M_CC(l0) - l0 I)^-1 M_CS(l0) u_S``, assembled with ``u_S``."""
    M = as_ratmatrix(M)
    part = _as_partition(M.dim, part)
    z = as_gauss(lambda0)
    u_S = [as_gauss(x) for x in u_S]
    if len(u_S) != len(part.keep):
        raise ValueError("reduced vector has the wrong length")
    A, B, K, _ = _blocks_at(M, part, z)
    full = [ZERO_G] * M.dim
    for k, x in zip(part.keep0, u_S):
        full[k] = x
    if part.complement0:
        try:
            x = solve(K, [[t] for t in matvec(B, u_S)])
        except SingularMatrix:
            raise SingularComplementAtLambda0(f"M_CC({z}) - {z}*I is singular") from None
        for k, r in zip(part.complement0, x):
            full[k] = -r[0]
    return full


# ---------------------------------------------------------------------------
# sufficient conditions and multiplicities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SufficientReport:
    """``outcome`` is ``"preserved_by_A"`` (no coupling kept -> eliminated),
    ``"preserved_by_B"`` (no coupling eliminated -> kept) or ``"neither"``.
    ``reduced_matches`` tells whether ``R(l0) == M_SS(l0)`` (checked whenever
    one condition holds)."""

    outcome: str
    a_zero: bool
    b_zero: bool
    reduced_matches: bool | None

    @property
    def sufficient(self) -> bool:
        return self.outcome != "neither"


def check_sufficient(M, part, lambda0) -> SufficientReport:
    M = as_ratmatrix(M)
    part = _as_partition(M.dim, part)
    z = as_gauss(lambda0)
    A, B, K, D = _blocks_at(M, part, z)
    a_zero = not any(any(r) for r in A)
    b_zero = not any(any(r) for r in B)
    outcome = "preserved_by_A" if a_zero else "preserved_by_B" if b_zero else "neither"
    matches = None
    if a_zero or b_zero:
        try:
            x = solve(K, B) if B else []
        except SingularMatrix:
            raise SingularComplementAtLambda0(f"M_CC({z}) - {z}*I is singular") from None
        corr = matmul(A, x) if A and A[0] else [[ZERO_G] * len(D) for _ in D]
        Rz = [[d - c for d, c in zip(dr, cr)] for dr, cr in zip(D, corr)]
        try:
            Rz_sym = reduce_matrix(M, part).evaluate(z)
        except (PoleError, SingularComplement):
            Rz_sym = Rz
        matches = Rz == D and Rz_sym == D
    return SufficientReport(outcome, a_zero, b_zero, matches)


@dataclass(frozen=True)
class MultiplicityPreservation:
    lambda0: GaussianRational
    before: MultiplicityReport
    after: MultiplicityReport | None
    lost: SpectrumMultiset
    seq_holds: bool
    spectrum_identity: bool

    @property
    def preserved(self) -> bool:
        return (
            self.after is not None
            and self.before.algebraic == self.after.algebraic
            and self.before.geometric == self.after.geometric
        )


def multiplicity_preservation_report(M, part, lambda0) -> MultiplicityPreservation:
    """Multiplicities at ``l0`` before and after reducing a constant matrix,
    together with the eigenvalues shared with the eliminated block."""
    M = as_ratmatrix(M)
    if not M.is_constant():
        raise ValueError("multiplicity preservation is stated for constant matrices")
    part = _as_partition(M.dim, part)
    z = as_gauss(lambda0)
    before = multiplicities(M, z)
    R = reduce_matrix(M, part)
    sub = M.submatrix(part.complement0)
    lost = shared_spectrum(M, sub) if part.complement0 else SpectrumMultiset()
    try:
        after = multiplicities(R, z)
    except (NotAnEigenvalue, PoleError):  # l0 was lost, or R has a pole there
        after = None
    identity = spectrum(R) == spectrum(M).difference(spectrum(sub) if part.complement0 else SpectrumMultiset())
    return MultiplicityPreservation(z, before, after, lost, len(lost) == 0, identity)
