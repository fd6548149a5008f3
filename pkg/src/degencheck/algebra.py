"""Anticommutative algebras given by structure constants.

Only the constants c[i, j, k] with i < j are stored (1-based indices);
e_i e_i = 0 and e_j e_i = -e_i e_j are structural.  Identities of the
variety are checked on basis tuples, after full linearization for those
with a repeated variable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Sequence

from .arith import ONE, T, ZERO, RationalFunction, as_rf, substitute
from .linalg import Matrix, nullspace_dimension, rref

Element = tuple  # length-n tuple of RationalFunction
Sparse = dict  # 0-based index -> nonzero RationalFunction


class DimensionMismatch(ValueError):
    pass


class InvalidStructure(ValueError):
    pass


@dataclass(frozen=True)
class IdentityWitness:
    """A basis tuple (1-based) on which an identity fails, with its residual."""

    identity: str
    indices: tuple[int, ...]
    residual: Element

    def __str__(self):
        coords = {k + 1: c for k, c in enumerate(self.residual) if c}
        from .expr import format_combination

        args = ", ".join(f"e{i}" for i in self.indices)
        return f"{self.identity}({args}) = {format_combination(coords)}"


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    name: str
    dim: int
    constants: Mapping[tuple[int, int, int], RationalFunction]
    params: frozenset = field(default=frozenset())

    def __post_init__(self):
        clean = {}
        for (i, j, k), c in self.constants.items():
            c = as_rf(c)
            if c:
                clean[(i, j, k)] = c
        object.__setattr__(self, "constants", MappingProxyType(dict(sorted(clean.items()))))
        used = set()
        for c in clean.values():
            used.update(c.symbols)
        object.__setattr__(self, "params", frozenset(self.params) | frozenset(used))
        self.validate()

    def validate(self):
        """Enforce the anticommutative input contract."""
        if self.dim < 1:
            raise InvalidStructure("dimension must be positive")
        if T in self.params:
            raise InvalidStructure(f"{self.name}: structure constants must not mention t")
        for i, j, k in self.constants:
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise InvalidStructure(f"{self.name}: bad constant index ({i}, {j}, {k})")

    @classmethod
    def from_products(cls, name: str, dim: int, products: Mapping, params=()) -> "AlgebraStructure":
        """Build from ``{(i, j): {k: coeff}}``; ``(i, j)`` with i > j is flipped."""
        consts = {}
        for (i, j), out in products.items():
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            for k, c in out.items():
                consts[(i, j, k)] = as_rf(c) * sign
        return cls(name, dim, consts, frozenset(params))

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> "AlgebraStructure":
        return cls(name or f"abelian{dim}", dim, {})

    def __eq__(self, other):
        if not isinstance(other, AlgebraStructure):
            return NotImplemented
        return (self.name, self.dim, dict(self.constants), self.params) == (
            other.name, other.dim, dict(other.constants), other.params)

    def __hash__(self):
        return hash((self.name, self.dim, tuple(self.constants.items())))

    def __reduce__(self):
        return (type(self), (self.name, self.dim, dict(self.constants), self.params))

    def constant(self, i: int, j: int, k: int) -> RationalFunction:
        """c_{i,j}^k for any ordered pair, using antisymmetry."""
        if i < j:
            return self.constants.get((i, j, k), ZERO)
        if i > j:
            return -self.constants.get((j, i, k), ZERO)
        return ZERO

    def products(self) -> dict[tuple[int, int], dict[int, RationalFunction]]:
        out: dict = {}
        for (i, j, k), c in self.constants.items():
            out.setdefault((i, j), {})[k] = c
        return out

    @cached_property
    def table(self) -> list[list[Sparse]]:
        """0-based full multiplication table of sparse vectors."""
        n = self.dim
        tab = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j, k), c in self.constants.items():
            tab[i - 1][j - 1][k - 1] = c
            tab[j - 1][i - 1][k - 1] = -c
        return tab

    def specialize(self, assignment: Mapping, name: str | None = None) -> "AlgebraStructure":
        consts = {key: substitute(c, assignment) for key, c in self.constants.items()}
        return AlgebraStructure(name or self.name, self.dim, consts,
                                self.params - set(assignment))

    def basis(self, i: int) -> Element:
        return basis_vector(self.dim, i)

    def __str__(self):
        from .catalog import serialize_algebra

        return serialize_algebra(self)


def basis_vector(n: int, i: int) -> Element:
    """e_i (1-based) in an n-dimensional algebra."""
    return tuple(ONE if k == i - 1 else ZERO for k in range(n))


def _dense(v: Sparse, n: int) -> Element:
    return tuple(v.get(k, ZERO) for k in range(n))


def _sparse(x: Sequence) -> Sparse:
    return {k: as_rf(c) for k, c in enumerate(x) if c}


def _add(u: Sparse, v: Sparse, sign: int = 1) -> Sparse:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, ZERO) + (c if sign > 0 else -c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _mul(tab, x: Sparse, y: Sparse) -> Sparse:
    out: Sparse = {}
    for i, a in x.items():
        row = tab[i]
        for j, b in y.items():
            cell = row[j]
            if not cell:
                continue
            ab = a * b
            for k, c in cell.items():
                s = out.get(k, ZERO) + ab * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def _check_dims(A: AlgebraStructure, *xs):
    for x in xs:
        if len(x) != A.dim:
            raise DimensionMismatch(f"vector of length {len(x)} in {A.dim}-dimensional algebra")


def product(A: AlgebraStructure, x: Sequence, y: Sequence) -> Element:
    _check_dims(A, x, y)
    return _dense(_mul(A.table, _sparse(x), _sparse(y)), A.dim)


def jacobian(A: AlgebraStructure, a: Sequence, b: Sequence, c: Sequence) -> Element:
    """J(a, b, c) = (ab)c + (bc)a + (ca)b."""
    _check_dims(A, a, b, c)
    return _dense(_jac(A.table, _sparse(a), _sparse(b), _sparse(c)), A.dim)


def _jac(tab, a: Sparse, b: Sparse, c: Sparse) -> Sparse:
    m = lambda x, y: _mul(tab, x, y)  # noqa: E731
    return _add(_add(m(m(a, b), c), m(m(b, c), a)), m(m(c, a), b))


def _unit(k: int) -> Sparse:
    return {k: ONE}


def _witness(name, A, idx, residual):
    return IdentityWitness(name, tuple(i + 1 for i in idx), _dense(residual, A.dim))


# -- identities ---------------------------------------------------------------

def tortkara_expression(A: AlgebraStructure, a, b, c) -> Element:
    """(ab)(cb) - J(a, b, c) b, evaluated directly (no linearization)."""
    _check_dims(A, a, b, c)
    tab = A.table
    a, b, c = _sparse(a), _sparse(b), _sparse(c)
    lhs = _mul(tab, _mul(tab, a, b), _mul(tab, c, b))
    rhs = _mul(tab, _jac(tab, a, b, c), b)
    return _dense(_add(lhs, rhs, -1), A.dim)


def check_tortkara(A: AlgebraStructure) -> IdentityWitness | None:
    """Check (ab)(cb) = J(a,b,c)b through its linearization in b.

    On basis vectors a, b, c, b' this reads
    (ab)(cb') + (ab')(cb) = J(a,b,c)b' + J(a,b',c)b,
    which is symmetric in (b, b'), so only b <= b' is visited.
    """
    tab = A.table
    n = A.dim
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if s < q:
            continue
        lhs = _add(_mul(tab, tab[p][q], tab[r][s]), _mul(tab, tab[p][s], tab[r][q]))
        j1 = _jac(tab, _unit(p), _unit(q), _unit(r))
        j2 = _jac(tab, _unit(p), _unit(s), _unit(r))
        rhs = _add(_mul(tab, j1, _unit(s)), _mul(tab, j2, _unit(q)))
        res = _add(lhs, rhs, -1)
        if res:
            return _witness("tortkara", A, (p, q, r, s), res)
    return None


def malcev_expression(A: AlgebraStructure, x, y, z) -> Element:
    """(xy)(xz) - ((xy)z)x - ((yz)x)x - ((zx)x)y, evaluated directly."""
    _check_dims(A, x, y, z)
    tab = A.table
    x, y, z = _sparse(x), _sparse(y), _sparse(z)
    return _dense(_malcev_lin(tab, x, x, y, z, half=True), A.dim)


def _malcev_lin(tab, x, x2, y, z, half=False) -> Sparse:
    m = lambda u, v: _mul(tab, u, v)  # noqa: E731

    def f(u, w):
        # M with the two occurrences of x replaced by u (first) and w (second)
        out = m(m(u, y), m(w, z))
        out = _add(out, m(m(m(u, y), z), w), -1)
        out = _add(out, m(m(m(y, z), u), w), -1)
        out = _add(out, m(m(m(z, u), w), y), -1)
        return out

    if half:
        return f(x, x2)
    return _add(f(x, x2), f(x2, x))


def check_malcev(A: AlgebraStructure) -> IdentityWitness | None:
    """Check (xy)(xz) = ((xy)z)x + ((yz)x)x + ((zx)x)y, linearized in x."""
    tab = A.table
    n = A.dim
    for p, s, q, r in itertools.product(range(n), repeat=4):
        if s < p:
            continue
        res = _malcev_lin(tab, _unit(p), _unit(s), _unit(q), _unit(r))
        if res:
            return _witness("malcev", A, (p, s, q, r), res)
    return None


def check_jacobi(A: AlgebraStructure) -> IdentityWitness | None:
    tab = A.table
    for p, q, r in itertools.combinations(range(A.dim), 3):
        res = _jac(tab, _unit(p), _unit(q), _unit(r))
        if res:
            return _witness("jacobi", A, (p, q, r), res)
    return None


def check_metabelian(A: AlgebraStructure) -> IdentityWitness | None:
    tab = A.table
    pairs = list(itertools.combinations(range(A.dim), 2))
    for (p, q), (r, s) in itertools.product(pairs, repeat=2):
        res = _mul(tab, tab[p][q], tab[r][s])
        if res:
            return _witness("metabelian", A, (p, q, r, s), res)
    return None


IDENTITIES = {
    "tortkara": check_tortkara,
    "malcev": check_malcev,
    "jacobi": check_jacobi,
    "metabelian": check_metabelian,
}


# -- invariants ---------------------------------------------------------------

def _span(vectors: list[Sparse], n: int) -> list[Sparse]:
    """Echelon basis of the span of the given vectors."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return []
    m = Matrix.from_rows([_dense(v, n) for v in vectors])
    red, r, _ = rref(m)
    return [_sparse(red.row(i)) for i in range(r)]


def lcs_dimensions(A: AlgebraStructure) -> list[int]:
    """dim A^1, dim A^2, ... with A^k = sum_{i+j=k} A^i A^j, until 0 or stable."""
    n = A.dim
    tab = A.table
    powers = {1: [_unit(k) for k in range(n)]}
    dims = [n]
    k = 1
    while dims[-1]:
        k += 1
        prods = []
        for i in range(1, k // 2 + 1):
            for x in powers[i]:
                for y in powers[k - i]:
                    prods.append(_mul(tab, x, y))
        powers[k] = _span(prods, n)
        dims.append(len(powers[k]))
        if dims[-1] == dims[-2]:
            break
    return dims


def is_nilpotent(A: AlgebraStructure) -> bool:
    return lcs_dimensions(A)[-1] == 0


def annihilator_dimension(A: AlgebraStructure) -> int:
    """dim {x : x e_j = 0 for all j}."""
    n = A.dim
    rows = [[A.constant(i, j, k) for i in range(1, n + 1)]
            for j in range(1, n + 1) for k in range(1, n + 1)]
    return nullspace_dimension(Matrix.from_rows(rows))

