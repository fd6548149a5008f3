"""Parser for scalar expressions and linear combinations of basis vectors.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := INTEGER | SYMBOL | BASIS | '(' expr ')'

``BASIS`` is ``e1``, ``e2``, ...; it is only legal where a linear
combination is expected.  Negative exponents are allowed for ``t`` only.
The Greek letters α and ε are accepted as spellings of ``alpha`` and ``eps``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import ONE, T, ZERO, RationalFunction

ALIASES = {"α": "alpha", "ε": "eps", "epsilon": "eps"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_α-ωΑ-Ω][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)
_BASIS = re.compile(r"e(\d+)$")


class ParseError(SyntaxError):
    """Syntax error with 1-based line and column information."""

    def __init__(self, message: str, line: int = 1, column: int = 1, text: str = ""):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
        self.lineno = line
        self.offset = column
        self.text = text

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Token(kind, m.group(), col0 + pos))
        pos = m.end()
    out.append(_Token("end", "", col0 + len(text)))
    return out


class _Linear(dict):
    """Linear form: basis index -> coefficient; key 0 holds the scalar part."""

    def scalar(self) -> RationalFunction | None:
        if any(k for k in self):
            return None
        return self.get(0, ZERO)

    @classmethod
    def of(cls, c: RationalFunction, key: int = 0) -> "_Linear":
        return cls({key: c}) if c else cls()

    def plus(self, other: "_Linear", sign: int = 1) -> "_Linear":
        out = _Linear(self)
        for k, v in other.items():
            s = out.get(k, ZERO) + (v if sign > 0 else -v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def times(self, c: RationalFunction) -> "_Linear":
        if not c:
            return _Linear()
        return _Linear({k: v * c for k, v in self.items()})


class _Parser:
    def __init__(self, text: str, line: int, col0: int, linear: bool, dim: int | None):
        self.text = text
        self.line = line
        self.tokens = _tokenize(text, line, col0)
        self.i = 0
        self.linear = linear
        self.dim = dim

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, self.line, tok.col, self.text)

    def expect(self, value: str):
        tok = self.take()
        if tok.value != value:
            self.error(f"expected {value!r}", tok)

    def parse(self) -> _Linear:
        if self.peek().kind == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return value

    def expr(self) -> _Linear:
        value = self.term()
        while self.peek().value in ("+", "-"):
            sign = 1 if self.take().value == "+" else -1
            value = value.plus(self.term(), sign)
        return value

    def term(self) -> _Linear:
        value = self.unary()
        while self.peek().value in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.value == "*":
                a, b = value.scalar(), rhs.scalar()
                if a is not None:
                    value = rhs.times(a)
                elif b is not None:
                    value = value.times(b)
                else:
                    self.error("product of two basis vectors", op)
            else:
                b = rhs.scalar()
                if b is None:
                    self.error("division by a basis vector", op)
                if not b:
                    self.error("division by zero", op)
                value = value.times(b.inverse())
        return value

    def unary(self) -> _Linear:
        if self.peek().value in ("+", "-"):
            sign = self.take().value
            value = self.unary()
            return value if sign == "+" else value.times(-ONE)
        return self.power()

    def power(self) -> _Linear:
        start = self.peek()
        base = self.atom()
        if self.peek().value != "^":
            return base
        self.take()
        exp = self.exponent()
        b = base.scalar()
        if b is None:
            self.error("power of a basis vector", start)
        if exp < 0 and b != RationalFunction.symbol(T):
            self.error("negative exponents are only allowed on t", start)
        return _Linear.of(b ** exp)

    def exponent(self) -> int:
        parens = self.peek().value == "("
        if parens:
            self.take()
        sign = 1
        if self.peek().value in ("+", "-"):
            sign = -1 if self.take().value == "-" else 1
        tok = self.take()
        if tok.kind != "int":
            self.error("exponent must be an integer", tok)
        if parens:
            self.expect(")")
        return sign * int(tok.value)

    def atom(self) -> _Linear:
        tok = self.take()
        if tok.kind == "int":
            return _Linear.of(RationalFunction.constant(int(tok.value)))
        if tok.kind == "name":
            m = _BASIS.match(tok.value)
            if m:
                if not self.linear:
                    self.error(f"basis vector {tok.value} not allowed here", tok)
                k = int(m.group(1))
                if k < 1 or (self.dim is not None and k > self.dim):
                    self.error(f"basis index {k} out of range", tok)
                return _Linear.of(ONE, k)
            return _Linear.of(RationalFunction.symbol(ALIASES.get(tok.value, tok.value)))
        if tok.value == "(":
            value = self.expr()
            self.expect(")")
            return value
        self.error("unexpected end of input" if tok.kind == "end" else f"unexpected {tok.value!r}", tok)


def parse_expression(text: str, *, line: int = 1, column: int = 1) -> RationalFunction:
    """Parse a scalar expression into a :class:`RationalFunction`."""
    return _Parser(text, line, column, False, None).parse().get(0, ZERO)


def parse_combination(
    text: str, dim: int | None = None, *, line: int = 1, column: int = 1
) -> dict[int, RationalFunction]:
    """Parse ``c1*e1 + c2*e2 + ...`` into ``{k: coefficient}`` (1-based, zeros dropped)."""
    p = _Parser(text, line, column, True, dim)
    value = p.parse()
    if value.get(0):
        raise ParseError("constant term in a linear combination of basis vectors", line, column, text)
    return {k: v for k, v in sorted(value.items()) if k}


def format_combination(coords: dict[int, RationalFunction], basis: str = "e") -> str:
    """Inverse of :func:`parse_combination` (canonical spelling)."""
    parts = []
    for k in sorted(coords):
        c = coords[k]
        if not c:
            continue
        name = f"{basis}{k}"
        if c == ONE:
            parts.append(("+", name))
        elif c == -ONE:
            parts.append(("-", name))
        else:
            neg = c.num.is_monomial() and c.num.leading()[1] < 0
            shown = -c if neg else c
            body = str(shown)
            simple = shown.num.is_monomial() and shown.den.is_constant()
            parts.append(("-" if neg else "+", f"{body}*{name}" if simple else f"({body})*{name}"))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
