"""Exact arithmetic over Q and over Q(t, alpha, eps, ...).

Scalars are :class:`fractions.Fraction`.  Polynomials keep a dict from
exponent tuples to nonzero coefficients; rational functions are reduced
ratios of polynomials with a monic denominator (graded-lex leading term).

Negative powers of ``t`` are not a separate Laurent type: ``t^-2`` is the
rational function ``1/t^2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd as _igcd
from typing import Mapping, Union

T = "t"
ALPHA = "alpha"
EPS = "eps"

_FIXED_ORDER = {T: 0, ALPHA: 1, EPS: 2}

Scalar = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    pass


class PoleError(ArithmeticError):
    """Raised by :func:`limit_t0` when the function blows up at t = 0."""

    def __init__(self, order: int, value: "RationalFunction | None" = None):
        self.order = order
        self.value = value
        super().__init__(f"limit at t=0 does not exist (t-order {order})")


class EvaluationPole(ArithmeticError):
    """Raised when a denominator vanishes at a substitution point."""


def symbol_key(name: str):
    """Sort key fixing the symbol order t, alpha, eps, then alphabetical."""
    if name in _FIXED_ORDER:
        return (0, _FIXED_ORDER[name], "")
    return (1, 0, name)


def sort_symbols(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=symbol_key))


@total_ordering
class TOrder:
    """Order of vanishing at t = 0; ``TOrder(None)`` stands for +infinity."""

    __slots__ = ("value",)

    def __init__(self, value: int | None):
        self.value = value

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "TOrder") -> "TOrder":
        if self.value is None or other.value is None:
            return TOrder(None)
        return TOrder(self.value + other.value)

    def __eq__(self, other):
        if isinstance(other, TOrder):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        if other == float("inf"):
            return self.value is None
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = TOrder(other)
        if not isinstance(other, TOrder):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "TOrder(+inf)" if self.value is None else f"TOrder({self.value})"


class Polynomial:
    """Multivariate polynomial with rational coefficients.

    Unused symbols are dropped on construction, so two polynomials are equal
    exactly when their (symbols, terms) pairs are equal.
    """

    __slots__ = ("symbols", "terms", "_hash")

    def __init__(self, symbols=(), terms: Mapping | None = None):
        symbols = tuple(symbols)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    exps = tuple(exps)
                    if len(exps) != len(symbols):
                        raise ValueError("exponent vector length mismatch")
                    if any(e < 0 for e in exps):
                        raise ValueError("negative exponent in polynomial")
                    clean[exps] = c if isinstance(c, Fraction) else Fraction(c)
        if symbols != sort_symbols(symbols):
            clean, symbols = _reorder(clean, symbols, sort_symbols(symbols))
        used = [i for i in range(len(symbols)) if any(e[i] for e in clean)]
        if len(used) != len(symbols):
            symbols = tuple(symbols[i] for i in used)
            clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        self.symbols = symbols
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((), {(): c})

    @classmethod
    def symbol(cls, name: str) -> "Polynomial":
        return cls((name,), {(1,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.symbols

    def constant_value(self) -> Fraction:
        if self.symbols:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree_in(self, name: str) -> int:
        if name not in self.symbols:
            return 0
        i = self.symbols.index(name)
        return max(e[i] for e in self.terms)

    def min_degree_in(self, name: str) -> int:
        if name not in self.symbols:
            return 0
        i = self.symbols.index(name)
        return min(e[i] for e in self.terms)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading (exponents, coefficient) under graded lex order."""
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def term_count(self) -> int:
        return len(self.terms)

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        num = 0
        den = 1
        for c in self.terms.values():
            num = _igcd(num, c.numerator)
            den = den * c.denominator // _igcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def primitive(self) -> "Polynomial":
        """Integer-coefficient associate with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading()[1] < 0:
            c = -c
        return self.scale(1 / c)

    def aligned(self, symbols: tuple[str, ...]) -> dict:
        """Term map re-expressed over a superset of this polynomial's symbols."""
        if symbols == self.symbols:
            return self.terms
        idx = [symbols.index(s) for s in self.symbols]
        n = len(symbols)
        out = {}
        for e, c in self.terms.items():
            v = [0] * n
            for i, k in zip(idx, e):
                v[i] = k
            out[tuple(v)] = c
        return out

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        syms = _union(self.symbols, other.symbols)
        out = dict(self.aligned(syms))
        for e, c in other.aligned(syms).items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(syms, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.symbols, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Polynomial()
        syms = _union(self.symbols, other.symbols)
        a = self.aligned(syms)
        b = other.aligned(syms)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial(syms, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        return Polynomial(self.symbols, {e: v * c for e, v in self.terms.items()})

    def shift_down(self, name: str, k: int) -> "Polynomial":
        """Divide by name^k (caller guarantees divisibility)."""
        if k == 0:
            return self
        i = self.symbols.index(name)
        return Polynomial(
            self.symbols,
            {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.symbols == other.symbols and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.symbols, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        """Terms in decreasing graded lex order."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _union(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    return sort_symbols(a + b)


def _reorder(terms, old, new):
    idx = [old.index(s) for s in new]
    return {tuple(e[i] for i in idx): c for e, c in terms.items()}, new


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for exps, c in p.sorted_terms():
        mono = "*".join(
            s if k == 1 else f"{s}^{k}" for s, k in zip(p.symbols, exps) if k
        )
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _format_factored(p: Polynomial) -> str:
    """Like format_polynomial, with the common monomial pulled out: t^3*(alpha + 1)."""
    if p.is_monomial():
        return format_polynomial(p)
    low = tuple(min(e[i] for e in p.terms) for i in range(len(p.symbols)))
    if not any(low):
        return format_polynomial(p)
    mono = "*".join(s if k == 1 else f"{s}^{k}" for s, k in zip(p.symbols, low) if k)
    rest = Polynomial(p.symbols, {tuple(a - b for a, b in zip(e, low)): c for e, c in p.terms.items()})
    return f"{mono}*({format_polynomial(rest)})"


# -- gcd ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sympy_ring(symbols: tuple[str, ...]):
    from sympy import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(symbols), QQ)
    return R


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _monomial_gcd(a: Polynomial, b: Polynomial, syms) -> tuple[int, ...]:
    ea = a.aligned(syms)
    eb = b.aligned(syms)
    return tuple(
        min(min(e[i] for e in ea), min(e[i] for e in eb)) for i in range(len(syms))
    )


def _divide_monomial(p: Polynomial, syms, m) -> Polynomial:
    if not any(m):
        return p
    return Polynomial(
        syms, {tuple(x - y for x, y in zip(e, m)): c for e, c in p.aligned(syms).items()}
    )


def cofactors(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return (g, a/g, b/g) with g a gcd of a and b.

    Monomial factors and the trivial cases are handled here; the remaining
    primitive parts go through sympy's sparse multivariate gcd.
    """
    one = Polynomial.constant(1)
    if a.is_zero():
        return b, a, one
    if b.is_zero():
        return a, one, b
    if a.is_constant() or b.is_constant():
        return one, a, b
    syms = _union(a.symbols, b.symbols)
    m = _monomial_gcd(a, b, syms)
    a1 = _divide_monomial(a, syms, m)
    b1 = _divide_monomial(b, syms, m)
    mono = Polynomial(syms, {m: 1})
    if a1.is_monomial() or b1.is_monomial():
        # a1, b1 share no monomial factor, so a monomial side makes the gcd trivial
        return mono, a1, b1
    if a1 == b1:
        return mono * a1, one, one
    syms1 = _union(a1.symbols, b1.symbols)
    R = _sympy_ring(syms1)
    h, ca, cb = R.from_dict(a1.aligned(syms1)).cofactors(R.from_dict(b1.aligned(syms1)))

    def back(p):
        return Polynomial(syms1, {e: _to_fraction(c) for e, c in p.items()})

    return mono * back(h), back(ca), back(cb)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    g = cofactors(a, b)[0]
    if g.is_zero():
        return g
    return g.scale(1 / g.leading()[1])


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


# -- rational functions ------------------------------------------------------

class RationalFunction:
    """Reduced fraction num/den of polynomials; den is monic under grlex."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _as_poly(num)
        den = Polynomial.constant(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _reduced:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def symbol(cls, name: str) -> "RationalFunction":
        return cls(Polynomial.symbol(name), _reduced=True)

    @classmethod
    def constant(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial.constant(c), _reduced=True)

    @property
    def symbols(self) -> tuple[str, ...]:
        return _union(self.num.symbols, self.den.symbols)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def term_count(self) -> int:
        return self.num.term_count() + self.den.term_count()

    def mentions(self, name: str) -> bool:
        return name in self.num.symbols or name in self.den.symbols

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other, _reduced=not isinstance(other, Polynomial))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_constant():
                return RationalFunction(self.num + other.num, self.den, _reduced=True)
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.den.is_constant() and other.den.is_constant():
            return RationalFunction(self.num * other.num, _reduced=True)
        # cross-cancel keeps intermediate sizes small
        _, a, d = cofactors(self.num, other.den)
        _, c, b = cofactors(other.num, self.den)
        return RationalFunction(*_monic(a * c, b * d), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by the zero function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den == Polynomial.constant(1):
            return format_polynomial(self.num)
        num = _format_factored(self.num)
        den = _format_factored(self.den)
        if not self.num.is_monomial() or num.startswith("-"):
            num = f"({num})"
        if not self.den.is_monomial() or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if num.is_zero():
        return num, Polynomial.constant(1)
    if not den.is_constant():
        _, num, den = cofactors(num, den)
    return _monic(num, den)


def _monic(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    lc = den.leading()[1]
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return num, den


ZERO = RationalFunction(Polynomial(), _reduced=True)
ONE = RationalFunction(Polynomial.constant(1), _reduced=True)


def as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, str):
        from .expr import parse_expression

        return parse_expression(x)
    return RationalFunction(x)


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# -- t-adic analysis ---------------------------------------------------------

def t_order(f: RationalFunction) -> TOrder:
    if f.is_zero():
        return TOrder(None)
    return TOrder(f.num.min_degree_in(T) - f.den.min_degree_in(T))


def _lowest_t_part(p: Polynomial) -> Polynomial:
    if T not in p.symbols:
        return p
    i = p.symbols.index(T)
    m = p.min_degree_in(T)
    return Polynomial(
        p.symbols, {e[:i] + (0,) + e[i + 1:]: c for e, c in p.terms.items() if e[i] == m}
    )


def limit_t0(f: RationalFunction) -> RationalFunction:
    """Limit of f as t -> 0, as a t-free rational function of the parameters."""
    order = t_order(f)
    if order.is_infinite or order.value > 0:
        return ZERO
    if order.value < 0:
        raise PoleError(order.value, f)
    return RationalFunction(_lowest_t_part(f.num), _lowest_t_part(f.den))


# -- substitution ------------------------------------------------------------

def _eval_poly(p: Polynomial, values: Mapping, one):
    """Evaluate p with symbol values taken from ``values`` (unlisted symbols kept)."""
    if p.is_zero():
        return one * 0
    powers: dict = {}
    total = None
    for exps, c in p.terms.items():
        term = one * c
        for s, k in zip(p.symbols, exps):
            if not k:
                continue
            key = (s, k)
            if key not in powers:
                base = values[s] if s in values else RationalFunction.symbol(s)
                powers[key] = base ** k
            term = term * powers[key]
        total = term if total is None else total + term
    return total


def substitute(f: RationalFunction, assignment: Mapping) -> RationalFunction:
    """Replace symbols by rationals or rational functions; others stay symbolic."""
    values = {k: as_rf(v) for k, v in assignment.items()}
    if not any(f.mentions(s) for s in values):
        return f
    num = _eval_poly(f.num, values, ONE)
    den = _eval_poly(f.den, values, ONE)
    if den.is_zero():
        raise EvaluationPole(f"denominator of {f} vanishes at {_fmt_assign(assignment)}")
    return num / den


def evaluate(f: RationalFunction, assignment: Mapping) -> Fraction:
    missing = [s for s in f.symbols if s not in assignment]
    if missing:
        raise KeyError(f"no value given for symbol(s) {', '.join(missing)}")
    vals = {s: Fraction(assignment[s]) for s in f.symbols}
    num = _eval_scalar(f.num, vals)
    den = _eval_scalar(f.den, vals)
    if den == 0:
        raise EvaluationPole(f"denominator of {f} vanishes at {_fmt_assign(vals)}")
    return num / den


def _eval_scalar(p: Polynomial, vals) -> Fraction:
    total = Fraction(0)
    for exps, c in p.terms.items():
        term = c
        for s, k in zip(p.symbols, exps):
            if k:
                term *= vals[s] ** k
        total += term
    return total


def _fmt_assign(assignment) -> str:
    return ", ".join(f"{k}={v}" for k, v in assignment.items())
