"""Recursive-descent parser and canonical printer for polynomial expressions.

Grammar (whitespace is ignored everywhere)::

    expr     := ["+" | "-"] term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := rational ["i"] | "i" | var ["^" uint] | "(" expr ")"
    var      := "z" uint            # 1-based, at most dim
    rational := uint ["/" uint]

``print_expression`` emits terms in graded-lex order (highest degree first)
and its output always parses back to the identical polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial
from .scalars import ComplexRational


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message


_SINGLE = set("+-*/^()i")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("INT", text[start:pos], start))
        elif ch == "z":
            start = pos
            pos += 1
            while pos < n and text[pos].isspace():
                pos += 1
            d0 = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == d0:
                raise ParseError("expected variable index after 'z'", d0)
            tokens.append(("VAR", text[d0:pos], start))
        elif ch in _SINGLE:
            tokens.append((ch, ch, pos))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dim = dim

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        t = self.tok
        if t[0] != kind:
            what = "end of input" if t[0] == "EOF" else repr(t[1])
            raise ParseError(f"expected {kind!r}, found {what}", t[2])
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.tok[0] != "EOF":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.tok[0] in ("+", "-"):
            sign = -1 if self.take(self.tok[0])[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.tok[0] in ("+", "-"):
            op = self.take(self.tok[0])[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.tok[0] == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        kind, value, off = self.tok
        if kind == "INT":
            r = self.rational()
            if self.tok[0] == "i":
                self.take("i")
                return Polynomial.constant(self.dim, ComplexRational(0, r))
            return Polynomial.constant(self.dim, r)
        if kind == "i":
            self.take("i")
            return Polynomial.constant(self.dim, ComplexRational(0, 1))
        if kind == "VAR":
            self.take("VAR")
            idx = int(value)
            if not 1 <= idx <= self.dim:
                raise ParseError(f"variable index z{idx} out of range for dim={self.dim}", off)
            v = Polynomial.variable(self.dim, idx)
            if self.tok[0] == "^":
                self.take("^")
                return v ** int(self.take("INT")[1])
            return v
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "EOF" else repr(value)
        raise ParseError(f"unexpected {what}", off)

    def rational(self) -> Fraction:
        num = int(self.take("INT")[1])
        if self.tok[0] == "/":
            self.take("/")
            _, den_text, den_off = self.take("INT")
            den = int(den_text)
            if den == 0:
                raise ParseError("division by zero in rational literal", den_off)
            return Fraction(num, den)
        return Fraction(num)


def parse_expression(text: str, dim: int) -> Polynomial:
    """Parse ``text`` into an exact polynomial in ``dim`` variables."""
    return _Parser(text, dim).parse()


def _monomial_text(alpha) -> str:
    parts = []
    for idx, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"z{idx}")
        elif a > 1:
            parts.append(f"z{idx}^{a}")
    return "*".join(parts)


def _coeff_text(c: ComplexRational) -> tuple[bool, str]:
    """(negative, magnitude text). Mixed complex values keep their own signs."""
    if not c.im:
        return c.re < 0, str(abs(c.re))
    if not c.re:
        mag = abs(c.im)
        return c.im < 0, "i" if mag == 1 else f"{mag} i"
    op = "-" if c.im < 0 else "+"
    return False, f"({c.re} {op} {abs(c.im)} i)"


def print_expression(p: Polynomial) -> str:
    """Canonical text form, e.g. ``z1^2 + 1``, ``(1 - 1 i)*z2``, ``0``."""
    if p.is_zero():
        return "0"
    pieces = []
    for n, (alpha, c) in enumerate(p.sorted_items()):
        neg, mag = _coeff_text(c)
        mono = _monomial_text(alpha)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if n == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)
