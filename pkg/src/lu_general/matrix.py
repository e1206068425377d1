"""Dense immutable matrices with 1-based inclusive slicing.

The public API is 1-based throughout: ``entry(i, j)`` addresses row ``i``,
column ``j`` with ``1 <= i <= rows``, and ``sub(i, j, k, l)`` takes the
block with rows ``i..j`` and columns ``k..l``, both bounds included.
Passing ``None`` for a bound selects the full range.  An empty range
(``j == i - 1``) is valid and yields a matrix with zero rows or columns;
rank-0 factorizations rely on this (an ``n x 0`` times ``0 x n`` product
is the ``n x n`` zero matrix).

Matrices are immutable after construction; all operations return new
values, so instances are safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BoundsError, FieldMismatchError, ShapeError
from .fields import RATIONAL, ScalarField


class Matrix:
    """A dense ``rows x cols`` matrix over a :class:`ScalarField`.

    Build one from nested sequences with :meth:`from_rows` (or the
    constructor), or use :meth:`zeros` / :meth:`identity`.  Entries are
    ``Fraction`` for the rational backend and ``float`` for float64.
    """

    __slots__ = ("_rows", "_cols", "_data", "_field")

    def __init__(self, rows: Iterable[Sequence], field: ScalarField = RATIONAL, cols: int | None = None):
        data = [tuple(r) for r in rows]
        ncols = len(data[0]) if data else (0 if cols is None else cols)
        for r in data:
            if len(r) != ncols:
                raise ShapeError("ragged rows: expected %d columns, got %d" % (ncols, len(r)))
        field = field.resolved_for([e for r in data for e in r])
        self._data = tuple(tuple(field.coerce(e) for e in r) for r in data)
        self._rows = len(data)
        self._cols = ncols
        self._field = field

    @classmethod
    def from_rows(cls, rows, field: ScalarField = RATIONAL) -> "Matrix":
        return cls(rows, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: ScalarField = RATIONAL) -> "Matrix":
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimensions")
        z = field.resolved_for(()).zero()
        return cls([[z] * cols for _ in range(rows)], field, cols=cols)

    @classmethod
    def identity(cls, n: int, field: ScalarField = RATIONAL) -> "Matrix":
        f = field.resolved_for(())
        one, zero = f.one(), f.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    # -- basic introspection -------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def field(self) -> ScalarField:
        return self._field

    @property
    def is_square(self) -> bool:
        return self._rows == self._cols

    def entry(self, i: int, j: int):
        """Entry at row ``i``, column ``j`` (1-based)."""
        if not (1 <= i <= self._rows and 1 <= j <= self._cols):
            raise BoundsError("entry (%d, %d) outside %dx%d matrix" % (i, j, self._rows, self._cols))
        return self._data[i - 1][j - 1]

    def row_values(self, i: int) -> tuple:
        if not 1 <= i <= self._rows:
            raise BoundsError("row %d outside %dx%d matrix" % (i, self._rows, self._cols))
        return self._data[i - 1]

    def to_rows(self) -> list:
        """Entries as a fresh list of row lists."""
        return [list(r) for r in self._data]

    def max_abs(self):
        """Largest absolute entry (field zero for an empty matrix)."""
        return max((abs(e) for r in self._data for e in r), default=self._field.zero())

    # -- slicing -------------------------------------------------------------

    def sub(self, i: int | None, j: int | None, k: int | None, l: int | None) -> "Matrix":
        """Copy of the block with rows ``i..j`` and columns ``k..l`` (1-based,
        inclusive).  ``None`` selects the full range.  ``j == i - 1`` (resp.
        ``l == k - 1``) selects an empty range."""
        i = 1 if i is None else i
        j = self._rows if j is None else j
        k = 1 if k is None else k
        l = self._cols if l is None else l
        self._check_range(i, j, self._rows, "row")
        self._check_range(k, l, self._cols, "column")
        if j < i or l < k:
            return Matrix.zeros(max(j - i + 1, 0), max(l - k + 1, 0), self._field)
        return self._raw([r[k - 1 : l] for r in self._data[i - 1 : j]])

    @staticmethod
    def _check_range(lo: int, hi: int, size: int, what: str) -> None:
        if hi >= lo:
            if not (1 <= lo and hi <= size):
                raise BoundsError("%s range %d..%d outside 1..%d" % (what, lo, hi, size))
        else:
            if not (1 <= lo <= size + 1 and 0 <= hi <= size):
                raise BoundsError("empty %s range %d..%d outside matrix" % (what, lo, hi))

    # -- algebra -------------------------------------------------------------

    def transpose(self) -> "Matrix":
        return self._raw([tuple(r[j] for r in self._data) for j in range(self._cols)], cols=self._rows)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self._field.kind != other._field.kind:
            raise FieldMismatchError(
                "cannot multiply %s matrix by %s matrix" % (self._field.kind, other._field.kind)
            )
        if self._cols != other._rows:
            raise ShapeError(
                "inner dimensions differ: %dx%d times %dx%d"
                % (self._rows, self._cols, other._rows, other._cols)
            )
        zero = self._field.zero()
        bt = list(zip(*other._data)) if other._data else [()] * other._cols
        out = []
        for r in self._data:
            out.append(tuple(sum((a * b for a, b in zip(r, c)), zero) for c in bt))
        return self._raw(out, cols=other._cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.matmul(other)

    def add(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return self._raw(
            [tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)],
            cols=self._cols,
        )

    def sub_elementwise(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return self._raw(
            [tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)],
            cols=self._cols,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        return self.add(other)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self.sub_elementwise(other)

    def _require_same_shape(self, other: "Matrix") -> None:
        if self._field.kind != other._field.kind:
            raise FieldMismatchError("field mismatch")
        if (self._rows, self._cols) != (other._rows, other._cols):
            raise ShapeError("shape mismatch")

    def _raw(self, data, cols: int | None = None) -> "Matrix":
        """Internal constructor bypassing coercion (entries already typed)."""
        m = Matrix.__new__(Matrix)
        m._data = tuple(tuple(r) for r in data)
        m._rows = len(m._data)
        m._cols = len(m._data[0]) if m._data else (0 if cols is None else cols)
        m._field = self._field
        return m

    # -- comparisons / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self._field.kind == other._field.kind
            and self._rows == other._rows
            and self._cols == other._cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self._field.kind, self._rows, self._cols, self._data))

    def __repr__(self) -> str:
        if self._rows * self._cols <= 16:
            body = ", ".join("[%s]" % ", ".join(str(e) for e in r) for r in self._data)
            return "Matrix(%dx%d %s: %s)" % (self._rows, self._cols, self._field.kind, body)
        return "Matrix(%dx%d %s)" % (self._rows, self._cols, self._field.kind)


def submatrix(a: Matrix, i: int | None, j: int | None, k: int | None, l: int | None) -> Matrix:
    """Functional form of :meth:`Matrix.sub`."""
    return a.sub(i, j, k, l)


def transpose(a: Matrix) -> Matrix:
    return a.transpose()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return a.matmul(b)


def require_square(a: Matrix, what: str = "matrix") -> None:
    if not a.is_square:
        raise ShapeError("%s must be square, got %dx%d" % (what, a.rows, a.cols))
