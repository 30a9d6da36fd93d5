"""Exact arithmetic over the Gaussian rationals Q(i).

Three layers:

* :class:`GaussianRational` -- ``a + b*i`` with ``a, b`` rational.
* :class:`Poly` -- univariate polynomials in ``l`` (lambda) over Q(i),
  coefficients stored in ascending degree, ``()`` for the zero polynomial.
* :class:`RatFunc` -- reduced quotients ``p/q`` with ``gcd(p, q) = 1`` and
  ``q`` monic, so equality of rational functions is structural equality.

Rational parts are ``gmpy2.mpq``; ints, ``Fraction`` and ``"p/q"`` strings
are accepted wherever a rational is expected.  All values are immutable.
Numeric evaluation works on Python ``complex``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import DivisionByZeroFunction, NearPoleError, PoleError

__all__ = [
    "GaussianRational",
    "Poly",
    "RatFunc",
    "I",
    "LAMBDA",
    "as_gauss",
    "as_ratfunc",
    "poly_gcd",
    "squarefree",
    "rf_arith",
    "rf_eval_exact",
    "rf_eval_numeric",
    "rf_is_proper",
    "rational_sqrt",
    "gauss_sqrt",
    "DEFAULT_POLE_TOL",
]

DEFAULT_POLE_TOL = 1e-10


_MPQ = type(mpq(0))
_EXACT = (int, Fraction, _MPQ)


def _q(x):
    if type(x) is _MPQ:
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, _MPQ, Rational)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


_Q0 = mpq(0)


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def from_complex(cls, z: complex, max_denominator: int = 1000) -> "GaussianRational":
        """Closest Gaussian rational with bounded denominators (used for snapping)."""
        z = complex(z)
        return cls(
            Fraction(z.real).limit_denominator(max_denominator),
            Fraction(z.imag).limit_denominator(max_denominator),
        )

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            return other
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GaussianRational._raw(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE_G / self) ** (-k)
        result, base = ONE_G, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """Squared modulus ``re^2 + im^2`` (exact)."""
        return self.re * self.re + self.im * self.im

    # comparison / conversion ----------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce_g(other)
        if other is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def sort_key(self):
        return (self.re, self.im)

    def height(self) -> int:
        """Crude size measure used for pivot choice."""
        return max(
            abs(self.re.numerator), self.re.denominator,
            abs(self.im.numerator), self.im.denominator,
        )

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        from .literals import format_gauss

        return format_gauss(self)


def _coerce_g(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, _EXACT):
        return GaussianRational._raw(_q(x), _Q0)
    return NotImplemented


def as_gauss(x) -> GaussianRational:
    """Coerce ints, Fractions, literal strings and constant RatFuncs."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, _EXACT):
        return GaussianRational(x)
    if isinstance(x, str):
        from .literals import parse_gauss

        return parse_gauss(x)
    if isinstance(x, RatFunc):
        c = x.constant_value()
        if c is None:
            raise TypeError(f"not a constant: {x}")
        return c
    if isinstance(x, complex):
        raise TypeError("complex floats are not exact; use GaussianRational.from_complex")
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


ZERO_G = GaussianRational(0)
ONE_G = GaussianRational(1)
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Polynomial in ``l`` over Q(i); ``coeffs[k]`` multiplies ``l**k``."""

    __slots__ = ("coeffs", "_cx")

    def __init__(self, coeffs=()):
        cs = [as_gauss(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._cx = None

    @classmethod
    def _raw(cls, coeffs) -> "Poly":
        # caller guarantees Gaussian coefficients; trailing zeros still trimmed
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p._cx = None
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls._raw((as_gauss(c),))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls._raw([ZERO_G] * k + [as_gauss(c)])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = ONE_P
        for r in roots:
            p = p * cls._raw((-as_gauss(r), ONE_G))
        return p

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO_G

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, _EXACT + (GaussianRational,)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce_p(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce_p(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_p(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce_p(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_P
        if len(b) == 1:
            c = b[0]
            return Poly._raw([x * c for x in a])
        if len(a) == 1:
            c = a[0]
            return Poly._raw([c * x for x in b])
        out = [ZERO_G] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = ONE_P, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce_p(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return ZERO_P, self
        lead_inv = ONE_G / other.lead
        quot = [ZERO_G] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            c = c * lead_inv
            quot[k] = c
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * bc[j]
        return Poly._raw(quot), Poly._raw(r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs or self.lead == ONE_G:
            return self
        inv = ONE_G / self.lead
        return Poly._raw([c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly._raw([c * k for k, c in enumerate(self.coeffs) if k])

    def __call__(self, z):
        """Exact Horner evaluation at a Gaussian rational."""
        z = as_gauss(z)
        acc = ZERO_G
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def complex_coeffs(self):
        if self._cx is None:
            self._cx = tuple(complex(c) for c in self.coeffs)
        return self._cx

    def eval_numeric(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.complex_coeffs()):
            acc = acc * z + c
        return acc

    def deflate(self, root) -> "Poly":
        """Exact quotient by ``(l - root)``; raises if ``root`` is not a root."""
        root = as_gauss(root)
        cs = self.coeffs
        if not cs:
            return self
        out = [ZERO_G] * (len(cs) - 1)
        acc = ZERO_G
        for k in range(len(cs) - 1, 0, -1):
            acc = acc * root + cs[k]
            out[k - 1] = acc
        if acc * root + cs[0]:
            raise ArithmeticError(f"{root} is not a root")
        return Poly._raw(out)

    def root_multiplicity(self, root) -> int:
        root = as_gauss(root)
        if not self.coeffs:
            raise ValueError("zero polynomial")
        k, p = 0, self
        while p.degree >= 1 and not p(root):
            p = p.deflate(root)
            k += 1
        return k

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        from .literals import format_poly

        return format_poly(self)


def _coerce_p(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, _EXACT + (GaussianRational,)):
        return Poly.constant(x)
    return NotImplemented


ZERO_P = Poly._raw(())
ONE_P = Poly._raw((ONE_G,))
X_P = Poly._raw((ZERO_G, ONE_G))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by Euclid over Q(i)."""
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p.monic(), q.monic()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree(p: Poly):
    """Yun decomposition: list of ``(factor, multiplicity)`` with monic,
    pairwise coprime, square-free factors and ``prod factor**mult == monic(p)``."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree >= 1:
        a = poly_gcd(b, d) if d else b
        if a.degree >= 1:
            out.append((a, k))
        b = b.exact_div(a)
        c = d.exact_div(a) if d else ZERO_P
        d = c - b.derivative()
        k += 1
    return out


def rational_sqrt(x):
    """Exact square root of a nonnegative rational, or None."""
    x = _q(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


def gauss_sqrt(z) -> GaussianRational | None:
    """Exact square root in Q(i) (principal branch, ``re >= 0``), or None."""
    z = as_gauss(z)
    a, b = z.re, z.im
    r = rational_sqrt(a * a + b * b)
    if r is None:
        return None
    x = rational_sqrt((a + r) / 2)
    if x is None:
        return None
    if x:
        y = b / (2 * x)
    else:
        y = rational_sqrt((r - a) / 2)
        if y is None:
            return None
        if b < 0:
            y = -y
    w = GaussianRational(x, y)
    return w if w * w == z else None


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced rational function ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if not den:
            raise DivisionByZeroFunction("zero denominator")
        n, d = _normalize(num, den)
        self.num = n
        self.den = d

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "RatFunc":
        n, d = _normalize(num, den)
        return cls._raw(n, d)

    @classmethod
    def constant(cls, c) -> "RatFunc":
        return cls._raw(Poly.constant(c), ONE_P)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._raw(p, ONE_P)

    # predicates ---------------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self):
        """The constant as a GaussianRational, or None when ``l`` appears."""
        if not self.is_constant():
            return None
        return self.num.coeffs[0] if self.num.coeffs else ZERO_G

    def is_proper(self) -> bool:
        return self.num.degree <= self.den.degree

    def is_lambda(self) -> bool:
        return self.num == X_P and self.den == ONE_P

    @property
    def total_degree(self) -> int:
        return max(self.num.degree, 0) + self.den.degree

    # arithmetic -----------------------------------------------------------------

    def __add__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc._make(self.num + other.num, self.den)
        return RatFunc._make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO_R
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFunc._raw(self.num * other.num, ONE_P)
        # cross-cancel first to keep the gcd small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFunc._raw(*_fix_lead(n, d))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZeroFunction("inverse of the zero function")
        return RatFunc._raw(*_fix_lead(self.den, self.num))

    def __truediv__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZeroFunction("division by the zero function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    # evaluation -------------------------------------------------------------------

    def __call__(self, z):
        return rf_eval_exact(self, z)

    def eval_numeric(self, z: complex, pole_tol: float = DEFAULT_POLE_TOL) -> complex:
        return rf_eval_numeric(self, z, pole_tol)

    # identity -------------------------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_r(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def key(self):
        """Total order key (structural), used for canonical sorting."""
        return (
            self.den.degree,
            self.num.degree,
            tuple(c.sort_key() for c in self.den.coeffs),
            tuple(c.sort_key() for c in self.num.coeffs),
        )

    def __repr__(self):
        return f"RatFunc({self.literal()!r})"

    def __str__(self):
        return self.literal()

    def literal(self) -> str:
        from .literals import format_ratfunc

        return format_ratfunc(self)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (list, tuple)):
        return Poly(x)
    return Poly.constant(x)


def _fix_lead(n: Poly, d: Poly):
    lead = d.lead
    if lead == ONE_G:
        return n, d
    inv = ONE_G / lead
    return (
        Poly._raw([c * inv for c in n.coeffs]),
        Poly._raw([c * inv for c in d.coeffs]),
    )


def _normalize(n: Poly, d: Poly):
    if not n:
        return ZERO_P, ONE_P
    if d.degree > 0 and n.degree > 0:
        g = poly_gcd(n, d)
        if g.degree > 0:
            n = n.exact_div(g)
            d = d.exact_div(g)
    return _fix_lead(n, d)


def _coerce_r(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, _EXACT + (GaussianRational,)):
        return RatFunc.constant(x)
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    return NotImplemented


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, str):
        from .literals import parse_ratfunc

        return parse_ratfunc(x)
    r = _coerce_r(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r


ZERO_R = RatFunc._raw(ZERO_P, ONE_P)
ONE_R = RatFunc._raw(ONE_P, ONE_P)
LAMBDA = RatFunc._raw(X_P, ONE_P)


# ---------------------------------------------------------------------------
# operation-style entry points
# ---------------------------------------------------------------------------


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field operation ``op`` in ``{"add", "sub", "mul", "div"}``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_eval_exact(f: RatFunc, z) -> GaussianRational:
    z = as_gauss(z)
    q = f.den(z)
    if not q:
        raise PoleError(f"{f} has a pole at {z}")
    return f.num(z) / q


def rf_eval_numeric(f: RatFunc, z: complex, pole_tol: float = DEFAULT_POLE_TOL) -> complex:
    z = complex(z)
    q = f.den.eval_numeric(z)
    if abs(q) < pole_tol:
        raise NearPoleError(f"|denominator| = {abs(q):.3g} at {z} is below {pole_tol:g}")
    out = f.num.eval_numeric(z) / q
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise NearPoleError(f"non-finite value of {f} at {z}")
    return out


def rf_is_proper(f: RatFunc) -> bool:
    return f.is_proper()
