"""Exact rational linear algebra.

Every zero test in the toolkit goes through this module, so all scalars
are ``fractions.Fraction`` and pivoting is deterministic: the first
nonzero entry, scanning columns left to right and rows top to bottom.
Tensors of higher rank are numpy object arrays of Fractions, frozen
(read-only) once built.
"""

import re
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, TypeAlias

import numpy as np

from src.algebra.errors import DimensionMismatch, SingularMatrix

Rational: TypeAlias = Fraction
RatVector: TypeAlias = tuple[Fraction, ...]

# "p" or "p/q": sign on the numerator only, no whitespace, q > 0
_RATIONAL_TEXT = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


def parse_rational(text: str) -> Fraction:
    """Parse the ``"p/q"`` / ``"p"`` text form of a rational."""
    if not isinstance(text, str) or not _RATIONAL_TEXT.fullmatch(text):
        raise ValueError(f"Not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Any) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when q is 1."""
    return str(Fraction(value))


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(v) for v in self.entries)
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("Matrix sizes must be non-negative")
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Any]], cols: Optional[int] = None
    ) -> "RatMatrix":
        rows = [list(row) for row in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and width != cols:
            raise DimensionMismatch(f"Expected {cols} columns, got {width}")
        if any(len(row) != width for row in rows):
            raise DimensionMismatch("Ragged rows")
        return cls(len(rows), width, tuple(v for row in rows for v in row))

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Any]], rows: Optional[int] = None
    ) -> "RatMatrix":
        return cls.from_rows(columns, cols=rows).transpose()

    @classmethod
    def from_array(cls, array: np.ndarray) -> "RatMatrix":
        if array.ndim != 2:
            raise DimensionMismatch("Expected a two-dimensional array")
        n_rows, n_cols = array.shape
        return cls(n_rows, n_cols, tuple(array.reshape(-1)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[Any]) -> "RatMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)],
            cols=n,
        )

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Entry ({i}, {j}) outside {self.shape}")
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> RatVector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> RatVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_array(self) -> np.ndarray:
        out = np.empty((self.rows, self.cols), dtype=object)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self[i, j]
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatch("Trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def apply(self, vector: Sequence[Any]) -> RatVector:
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"Vector of length {len(vector)} against {self.cols} columns"
            )
        return tuple(
            sum(
                (a * Fraction(v) for a, v in zip(self.row(i), vector) if a),
                Fraction(0),
            )
            for i in range(self.rows)
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"Cannot multiply {self.shape} by {other.shape}"
            )
        columns = [other.column(j) for j in range(other.cols)]
        return RatMatrix.from_rows(
            [
                [
                    sum(
                        (a * b for a, b in zip(self.row(i), col) if a and b),
                        Fraction(0),
                    )
                    for col in columns
                ]
                for i in range(self.rows)
            ],
            cols=other.cols,
        )

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, factor: Any) -> "RatMatrix":
        factor = Fraction(factor)
        return RatMatrix(
            self.rows, self.cols, tuple(factor * v for v in self.entries)
        )

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"Shapes {self.shape} and {other.shape}")


def _reduce(rows: list[list[Fraction]], cols: int) -> list[int]:
    """Gauss-Jordan elimination in place; returns the pivot columns."""
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        if pivot_row == len(rows):
            break
        for r in range(pivot_row, len(rows)):
            if rows[r][col] != 0:
                break
        else:
            continue
        rows[pivot_row], rows[r] = rows[r], rows[pivot_row]
        lead = rows[pivot_row][col]
        if lead != 1:
            rows[pivot_row] = [v / lead for v in rows[pivot_row]]
        for other in range(len(rows)):
            factor = rows[other][col]
            if other != pivot_row and factor != 0:
                rows[other] = [
                    v - factor * p
                    for v, p in zip(rows[other], rows[pivot_row])
                ]
        pivots.append(col)
        pivot_row += 1
    return pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row-echelon form and its pivot columns."""
    rows = m.to_rows()
    pivots = _reduce(rows, m.cols)
    return RatMatrix.from_rows(rows, cols=m.cols), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def null_space_basis(m: RatMatrix) -> list[RatVector]:
    """Basis of {x : m x = 0}, one vector per free column, in column order.

    The vector for free column f has a 1 at f, zeros at the other free
    columns and minus the rref column f at the pivot positions.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * m.cols
        vector[free] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r, free]
        basis.append(tuple(vector))
    return basis


def span_basis(
    vectors: Iterable[Sequence[Any]], length: int
) -> tuple[list[RatVector], list[int]]:
    """Row-reduced basis of the span of ``vectors`` and its pivot columns.

    Each basis vector has a 1 at its own pivot and 0 at the others, so the
    coordinates of a vector in the span are its entries at the pivots.
    """
    reduced, pivots = rref(RatMatrix.from_rows(list(vectors), cols=length))
    return [reduced.row(r) for r in range(len(pivots))], pivots


def determinant(m: RatMatrix) -> Fraction:
    if not m.is_square:
        raise DimensionMismatch(f"Determinant of a {m.shape} matrix")
    rows = m.to_rows()
    n = m.rows
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        lead = rows[col][col]
        det *= lead
        for r in range(col + 1, n):
            factor = rows[r][col] / lead
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square:
        raise DimensionMismatch(f"Inverse of a {m.shape} matrix")
    n = m.rows
    rows = [
        row + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m.to_rows())
    ]
    pivots = _reduce(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("Matrix is not invertible")
    return RatMatrix.from_rows([row[n:] for row in rows], cols=n)


def solve_symmetric(g: RatMatrix, rhs: Sequence[Any]) -> RatVector:
    """The unique x with g x = rhs.

    Named for its use on Gram matrices, but symmetry is not required; only
    invertibility is.
    """
    if not g.is_square or len(rhs) != g.rows:
        raise DimensionMismatch(
            f"System {g.shape} with right-hand side of length {len(rhs)}"
        )
    n = g.rows
    rows = [row + [Fraction(b)] for row, b in zip(g.to_rows(), rhs)]
    pivots = _reduce(rows, n + 1)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("Gram matrix is degenerate")
    return tuple(rows[i][n] for i in range(n))


def solve_affine(
    m: RatMatrix, rhs: Sequence[Any]
) -> tuple[Optional[RatVector], list[RatVector]]:
    """Solution set of m x = rhs as (particular solution, kernel basis).

    The particular solution sets every free variable to zero; it is None
    when the system is inconsistent.
    """
    if len(rhs) != m.rows:
        raise DimensionMismatch(
            f"System {m.shape} with right-hand side of length {len(rhs)}"
        )
    rows = [row + [Fraction(b)] for row, b in zip(m.to_rows(), rhs)]
    pivots = _reduce(rows, m.cols + 1)
    kernel = null_space_basis(m)
    if m.cols in pivots:
        return None, kernel
    solution = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        solution[p] = rows[r][m.cols]
    return tuple(solution), kernel


# Tensor helpers


def freeze(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def rational_array(values: Any) -> np.ndarray:
    """Frozen object array of Fractions with the shape of ``values``."""
    source = np.asarray(values, dtype=object)
    out = np.empty(source.shape, dtype=object)
    for index in np.ndindex(*source.shape):
        out[index] = Fraction(source[index])
    return freeze(out)


def zeros_tensor(shape: Sequence[int]) -> np.ndarray:
    return freeze(np.full(tuple(shape), Fraction(0), dtype=object))


def build_tensor(
    shape: Sequence[int], entry: Callable[..., Any]
) -> np.ndarray:
    """Frozen tensor whose entry at ``index`` is ``entry(*index)``."""
    out = np.empty(tuple(shape), dtype=object)
    for index in np.ndindex(*out.shape):
        out[index] = Fraction(entry(*index))
    return freeze(out)


def is_zero(array: np.ndarray) -> bool:
    return not np.any(array != 0)


def first_nonzero(
    array: np.ndarray, width: Optional[int] = None
) -> Optional[list[int]]:
    """Lexicographically first index of a nonzero entry, cut to ``width``.

    Cutting keeps the leading indices, so for a residual tensor whose last
    axis is the output coordinate ``width=ndim-1`` gives the first
    violating argument tuple.
    """
    hits = np.argwhere(array != 0)
    if len(hits) == 0:
        return None
    index = [int(i) for i in hits[0]]
    return index if width is None else index[:width]


def rational_vector(values: Iterable[Any]) -> RatVector:
    return tuple(Fraction(v) for v in values)


def contract(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """``np.einsum`` over object arrays of Fractions, result frozen.

    Empty axes give an all-zero result of the output shape instead of
    relying on einsum's empty-sum value.
    """
    inputs, output = subscripts.split("->")
    sizes: dict[str, int] = {}
    for labels, operand in zip(inputs.split(","), operands):
        sizes.update(zip(labels, operand.shape))
    shape = tuple(sizes[label] for label in output)
    if any(operand.size == 0 for operand in operands):
        return zeros_tensor(shape)
    return rational_array(np.einsum(subscripts, *operands))
