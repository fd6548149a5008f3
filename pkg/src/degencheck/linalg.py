"""Dense exact linear algebra over the rational-function field.

Rank is *generic* rank: an entry counts as nonzero when it is a nonzero
rational function.  Elimination records every non-constant pivot, since
the result only holds where those expressions do not vanish.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .arith import ONE, ZERO, RationalFunction, as_rf


class NonSquare(ValueError):
    pass


class NoSolution(ValueError):
    """Inconsistent system; ``witness`` is the offending reduced row."""

    def __init__(self, witness: list[RationalFunction]):
        self.witness = witness
        super().__init__("linear system is inconsistent")


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rf(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> RationalFunction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[RationalFunction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[RationalFunction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k, a in enumerate(row):
                    if a:
                        b = other[k, j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def _zip(self, other: "Matrix", op) -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [op(a, b) for a, b in zip(self.entries, other.entries)])

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._zip(other, lambda a, b: a - b)

    def map(self, fn) -> "Matrix":
        return Matrix(self.rows, self.cols, [fn(x) for x in self.entries])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.to_rows())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _eliminate(rows: list[list[RationalFunction]], ncols: int, reduced: bool = True, stop_col: int | None = None):
    """Gauss-Jordan in place.

    Pivot column: first column with a nonzero entry at or below the current
    row.  Pivot row: the candidate with the fewest terms, ties to the lowest
    index.  Returns (pivots, swaps, assumed) where ``assumed`` collects the
    non-constant pivots, which must be nonzero for the result to hold.
    """
    pivots: list[int] = []
    assumed: list[RationalFunction] = []
    swaps = 0
    r = 0
    nrows = len(rows)
    last = ncols if stop_col is None else stop_col
    for c in range(last):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            x = rows[i][c]
            if x and (best is None or x.term_count() < rows[best][c].term_count()):
                best = i
        if best is None:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
            swaps += 1
        piv = rows[r][c]
        if not piv.is_constant():
            assumed.append(piv)
        inv = piv.inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots, swaps, assumed


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    rows = m.to_rows()
    pivots, _, _ = _eliminate(rows, m.cols)
    return Matrix(m.rows, m.cols, [x for r in rows for x in r]), len(pivots), pivots


def generic_rank(m: Matrix) -> tuple[int, list[RationalFunction]]:
    """Rank together with the pivot expressions assumed nonzero."""
    rows = m.to_rows()
    pivots, _, assumed = _eliminate(rows, m.cols, reduced=False)
    return len(pivots), assumed


def rank(m: Matrix) -> int:
    return generic_rank(m)[0]


def nullspace_dimension(m: Matrix) -> int:
    return m.cols - rank(m)


def nullspace(m: Matrix) -> list[list[RationalFunction]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, _, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(v)
    return basis


def determinant(m: Matrix) -> RationalFunction:
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    rows = m.to_rows()
    det = ONE
    sign = 1
    for c in range(n):
        best = None
        for i in range(c, n):
            x = rows[i][c]
            if x and (best is None or x.term_count() < rows[best][c].term_count()):
                best = i
        if best is None:
            return ZERO
        if best != c:
            rows[c], rows[best] = rows[best], rows[c]
            sign = -sign
        piv = rows[c][c]
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[c])]
    return det if sign > 0 else -det


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Some x with a @ x == b; free unknowns are set to zero."""
    return _solve(a, b)[0]


def _solve(a: Matrix, b: Matrix) -> tuple[Matrix, list[int]]:
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    rows = [a.row(i) + b.row(i) for i in range(a.rows)]
    pivots, _, _ = _eliminate(rows, a.cols + b.cols, stop_col=a.cols)
    for r in range(len(pivots), a.rows):
        if any(rows[r][a.cols:]):
            raise NoSolution(rows[r])
    out = [[ZERO] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        out[p] = rows[r][a.cols:]
    x = Matrix.from_rows(out) if a.cols else Matrix(0, b.cols, [])
    return x, pivots


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise NonSquare(f"inverse of a {m.rows}x{m.cols} matrix")
    x, pivots = _solve(m, Matrix.identity(m.rows))
    if len(pivots) < m.rows:
        raise NoSolution([])
    return x
