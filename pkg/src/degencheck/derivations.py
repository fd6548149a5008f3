"""Derivation algebras: dim Der(A) as the nullspace of a linear system.

A derivation is an n x n matrix D (column i holds D(e_i)) with
D(e_i e_j) = D(e_i) e_j + e_i D(e_j).  Unknown D[p, q] sits in column
p * n + q of the system; rows are ordered by (i, j, k) with i < j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebra import AlgebraStructure
from .arith import ZERO, RationalFunction
from .linalg import Matrix, generic_rank, nullspace


@dataclass(frozen=True)
class DerivationSystem:
    algebra: str
    matrix: Matrix

    @property
    def n(self) -> int:
        return int(round(self.matrix.cols ** 0.5))


@dataclass(frozen=True)
class DerivationResult:
    algebra: str
    dimension: int
    assumed_nonzero: tuple[RationalFunction, ...]


def derivation_system(A: AlgebraStructure) -> DerivationSystem:
    n = A.dim
    c = A.constant
    rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                row = [ZERO] * (n * n)

                def bump(p, q, v):
                    if v:
                        row[(p - 1) * n + (q - 1)] = row[(p - 1) * n + (q - 1)] + v

                # D(e_i e_j)_k = sum_m c_ij^m D[k, m]
                for m in range(1, n + 1):
                    bump(k, m, c(i, j, m))
                # (D(e_i) e_j)_k = sum_p D[p, i] c_pj^k
                # (e_i D(e_j))_k = sum_p D[p, j] c_ip^k
                for p in range(1, n + 1):
                    bump(p, i, -c(p, j, k))
                    bump(p, j, -c(i, p, k))
                rows.append(row)
    if not rows:
        return DerivationSystem(A.name, Matrix(0, n * n, []))
    return DerivationSystem(A.name, Matrix.from_rows(rows))


def derivation_analysis(A: AlgebraStructure) -> DerivationResult:
    """Generic dim Der(A) plus the parameter expressions assumed nonzero."""
    system = derivation_system(A).matrix
    r, assumed = generic_rank(system)
    seen = []
    for a in assumed:
        for part in (a.num, a.den):
            if not part.is_constant():
                expr = RationalFunction(part.primitive())
                if expr not in seen:
                    seen.append(expr)
    return DerivationResult(A.name, system.cols - r, tuple(seen))


def derivation_dimension(A: AlgebraStructure) -> int:
    return derivation_analysis(A).dimension


def derivation_dimension_at(A: AlgebraStructure, assignment: Mapping) -> int:
    """dim Der at concrete parameter values (may exceed the generic value)."""
    return derivation_dimension(A.specialize(assignment))


def derivation_basis(A: AlgebraStructure) -> list[Matrix]:
    """A basis of Der(A) as n x n matrices."""
    n = A.dim
    return [Matrix(n, n, v) for v in nullspace(derivation_system(A).matrix)]


def is_derivation(A: AlgebraStructure, D: Matrix) -> bool:
    n = A.dim
    vec = Matrix(n * n, 1, list(D.entries))
    out = derivation_system(A).matrix @ vec
    return not any(out.entries)
