"""Exact dense linear algebra over the rationals.

Gaussian elimination with exact rational pivots: rank, solve, inverse and
nullspace never round, so there is no tolerance parameter anywhere.  Matrices
are small (desk scale), so plain division-based elimination is the right
tool; results are exact because the scalars are.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularSystem
from .scalar import Rat, as_rat, rat_str


class ExactMatrix:
    """A rows x cols matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        data = [[as_rat(v) for v in row] for row in entries]
        if data and any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", len(data[0]) if data else 0)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "ExactMatrix":
        cols = [list(c) for c in columns]
        if not cols:
            return cls([])
        rows = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(rows)])

    # -- basics -----------------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def row(self, i) -> list:
        return list(self.entries[i])

    def column(self, j) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-v for v in row] for row in self.entries])

    def scale(self, value) -> "ExactMatrix":
        value = as_rat(value)
        return ExactMatrix([[v * value for v in row] for row in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_t = other.transpose().entries
        return ExactMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in other_t] for row in self.entries]
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def matvec(self, vector: Sequence) -> list:
        vector = [as_rat(v) for v in vector]
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        return [sum(a * b for a, b in zip(row, vector)) for row in self.entries]

    def _check_shape(self, other: "ExactMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    # -- elimination ------------------------------------------------------

    def _rref(self, augment: "ExactMatrix | None" = None):
        """Reduced row echelon form; returns (rows, aug_rows, pivot_cols)."""
        m = [list(row) for row in self.entries]
        aug = [list(row) for row in augment.entries] if augment is not None else None
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            if aug is not None:
                aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
            inv = 1 / m[r][c]
            m[r] = [v * inv for v in m[r]]
            if aug is not None:
                aug[r] = [v * inv for v in aug[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    factor = m[i][c]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
                    if aug is not None:
                        aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, aug, pivots

    def rank(self) -> int:
        _, _, pivots = self._rref()
        return len(pivots)

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """Exact solution X of self @ X = rhs.

        Raises SingularSystem when the system is inconsistent or the solution
        is not unique (free columns); the exception carries the rank.
        """
        if rhs.rows != self.rows:
            raise DimensionMismatch(f"rhs has {rhs.rows} rows, expected {self.rows}")
        m, aug, pivots = self._rref(rhs)
        rank = len(pivots)
        for i in range(rank, self.rows):
            if any(v != 0 for v in aug[i]):
                raise SingularSystem("inconsistent system", rank, self.rows, self.cols)
        if rank < self.cols:
            raise SingularSystem("underdetermined system", rank, self.rows, self.cols)
        solution = [[Rat(0)] * rhs.cols for _ in range(self.cols)]
        for r, c in enumerate(pivots):
            solution[c] = aug[r]
        return ExactMatrix(solution)

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        return self.solve(ExactMatrix.identity(self.rows))

    def nullspace(self) -> list:
        """Basis of the right kernel, each vector a list of rationals."""
        m, _, pivots = self._rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            vec = [Rat(0)] * self.cols
            vec[f] = Rat(1)
            for r, c in enumerate(pivots):
                vec[c] = -m[r][f]
            basis.append(vec)
        return basis

    def to_json(self) -> list:
        return [[rat_str(v) for v in row] for row in self.entries]

    def __repr__(self) -> str:
        return "[" + "; ".join(" ".join(rat_str(v) for v in row) for row in self.entries) + "]"


def exact_solve(matrix: ExactMatrix, rhs: Iterable) -> list:
    """Solve matrix @ x = rhs for a single right-hand-side vector."""
    column = ExactMatrix([[v] for v in rhs])
    return exact_solve_matrix(matrix, column).column(0)


def exact_solve_matrix(matrix: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix:
    return matrix.solve(rhs)


class SpanBasis:
    """Incrementally maintained row space in reduced echelon form.

    Used for exact rank growth: ``add`` returns True iff the vector enlarged
    the span.
    """

    def __init__(self, length: int):
        self.length = length
        self.rows: list = []
        self.pivots: list = []  # pivot column of each stored row

    def _reduce(self, vector: list) -> list:
        v = [as_rat(x) for x in vector]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                factor = v[p]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains(self, vector) -> bool:
        return all(x == 0 for x in self._reduce(list(vector)))

    def add(self, vector) -> bool:
        v = self._reduce(list(vector))
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            if row[pivot] != 0:
                factor = row[pivot]
                self.rows[i] = [a - factor * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(pivot)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)
