"""Property checks shared by the unit suites and the acceptance run.

Each function asserts one law for one drawn example; the callers decide how
many examples to draw.
"""

from isored.errors import PoleError
from isored.netgraph import branches_by_length, reduced_entry, structural_sets
from isored.ratfield import GaussianRational, Poly, RatFunc, poly_gcd, rf_arith, rf_eval_exact

ZERO = RatFunc(0)
ONE = RatFunc(1)


def normalized(f: RatFunc) -> bool:
    if not f.num:
        return f.den == Poly([1])
    return f.den.lead == GaussianRational(1) and poly_gcd(f.num, f.den).degree == 0


def field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE


def evaluation_homomorphism(f, g, z):
    try:
        fz, gz = rf_eval_exact(f, z), rf_eval_exact(g, z)
    except PoleError:
        return
    assert rf_eval_exact(f + g, z) == fz + gz
    assert rf_eval_exact(f * g, z) == fz * gz


def normalization_idempotent(a, b, op):
    r = rf_arith(a, b, op)
    assert normalized(r)
    assert RatFunc(r.num, r.den) == r
    assert RatFunc(r.num, r.den).num == r.num


def first_structural(net):
    for size in range(1, net.n + 1):
        found = structural_sets(net, size)
        if found:
            return found[0]
    raise AssertionError("the full vertex set is always structural")


def branch_sum_identity(net):
    """Reduced entry equals the sum over lengths of the branch sums."""
    S = first_structural(net)
    for i in S.keep:
        for j in S.keep:
            total = RatFunc.constant(0)
            for p in range(1, net.n + 1):
                total = total + branches_by_length(net, S, i, j, p)
            assert total == reduced_entry(net, S, i, j)
