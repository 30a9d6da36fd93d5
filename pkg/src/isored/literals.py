"""Text literals for Gaussian rationals and rational functions.

The variable is spelled ``l`` (``λ`` is accepted on input).  Accepted input
is a small expression language::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := ("+"|"-") unary | power
    power  := atom ["^" uint]
    atom   := number | "i" | "l" | "(" expr ")"
    number := uint ["/" uint] ["i"]

so ``"-2/l"``, ``"1/l^2"``, ``"(1/2+3/4i)*l + 1"`` and ``"(l^2+1)/l"`` all
parse.  A fraction written without spaces (``3/4i``) is a single number.
Formatting always produces text this parser reads back to the same value.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .ratfield import (
    LAMBDA,
    ONE_R,
    GaussianRational,
    Poly,
    RatFunc,
)

__all__ = [
    "parse_ratfunc",
    "parse_gauss",
    "parse_vector",
    "format_gauss",
    "format_poly",
    "format_ratfunc",
    "format_vector",
]

_NUMBER = re.compile(r"(\d+)(?:/(\d+))?(i)?")
_UINT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(f"{msg} in {self.text!r}", column=self.pos + 1)

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> RatFunc:
        if not self.text.strip():
            self.error("empty literal")
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        if self.take("-"):
            acc = -self.term()
        else:
            self.take("+")
            acc = self.term()
        while True:
            if self.take("+"):
                acc = acc + self.term()
            elif self.take("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.unary()
        while True:
            if self.take("*"):
                acc = acc * self.unary()
            elif self.take("/"):
                start = self.pos
                d = self.unary()
                if not d:
                    self.pos = start
                    self.error("division by zero")
                acc = acc / d
            else:
                return acc

    def unary(self):
        if self.take("-"):
            return -self.unary()
        if self.take("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.take("^"):
            self.skip()
            m = _UINT.match(self.text, self.pos)
            if not m:
                self.error("expected a non-negative integer exponent")
            self.pos = m.end()
            base = base ** int(m.group())
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return value
        if ch in ("l", "λ"):
            self.pos += 1
            return LAMBDA
        if ch == "i":
            self.pos += 1
            return RatFunc.constant(GaussianRational(0, 1))
        m = _NUMBER.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            num, den, imag = m.groups()
            value = Fraction(int(num), int(den) if den else 1) if den != "0" else None
            if value is None:
                self.error("zero denominator")
            g = GaussianRational(0, value) if imag else GaussianRational(value)
            return RatFunc.constant(g)
        if not ch:
            self.error("unexpected end of literal")
        self.error(f"unexpected {ch!r}")


def parse_ratfunc(text: str) -> RatFunc:
    return _Parser(text).parse()


def parse_gauss(text: str) -> GaussianRational:
    f = parse_ratfunc(text)
    c = f.constant_value()
    if c is None:
        raise ParseError(f"{text!r} is not a constant")
    return c


def parse_vector(text: str):
    """Comma separated Gaussian literals, e.g. ``"i,-1,-i,1"``."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise ParseError(f"bad vector {text!r}")
    return [parse_gauss(p) for p in parts]


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussianRational) -> str:
    a, b = z.re, z.im
    if not b:
        return _frac(a)
    if b == 1:
        im = "i"
    elif b == -1:
        im = "-i"
    else:
        im = _frac(b) + "i"
    if not a:
        return im
    if im.startswith("-"):
        return f"{_frac(a)}{im}"
    return f"{_frac(a)}+{im}"


def _mono(k: int) -> str:
    return "l" if k == 1 else f"l^{k}"


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        neg = False
        if c.is_real():
            neg = c.re < 0
            mag = -c if neg else c
            cs = format_gauss(mag)
        elif not c.re:
            neg = c.im < 0
            mag = -c if neg else c
            cs = format_gauss(mag)
        else:
            cs = "(" + format_gauss(c) + ")"
        if k == 0:
            body = cs
        elif cs == "1":
            body = _mono(k)
        else:
            body = f"{cs}*{_mono(k)}"
        if not pieces:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def _wrap(p: Poly) -> str:
    s = format_poly(p)
    if len([c for c in p.coeffs if c]) > 1 or (
        p.degree == 0 and not p.coeffs[0].is_real() and p.coeffs[0].re
    ):
        return f"({s})"
    return s


def format_ratfunc(f: RatFunc) -> str:
    if f.den == ONE_R.den:
        return format_poly(f.num)
    num = format_poly(f.num)
    if len([c for c in f.num.coeffs if c]) > 1:
        num = f"({num})"
    return f"{num}/{_wrap(f.den)}"


def format_vector(vec) -> str:
    return ",".join(format_gauss(z) if isinstance(z, GaussianRational) else repr(z) for z in vec)
