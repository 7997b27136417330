"""Dense exact matrices and the elimination kernel.

Vectors act on matrices from the left throughout (``x -> x @ M``), so the
image of ``M`` is its row space and its kernel is the left null space.
Products are written in the same left-to-right order as composites of
morphisms: ``A @ B`` means "first A, then B".
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import (
    CorestarError,
    FieldDescriptor,
    FieldMismatchError,
    Scalar,
    parse_scalar,  # noqa: F401  re-exported
)


class DimensionError(CorestarError):
    pass


class Matrix:
    """Immutable dense matrix over one :class:`FieldDescriptor`.

    Empty shapes (``m == 0`` or ``n == 0``) are legal.  An ``m x 0`` by
    ``0 x k`` product is the ``m x k`` zero matrix.
    """

    __slots__ = ("field", "rows", "cols", "_data", "_hash", "_rank", "_star")

    def __init__(self, field: FieldDescriptor, rows: int, cols: int, data: tuple):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None
        # lazily cached; safe because matrices are immutable
        self._rank = None
        self._star = None

    # construction

    @classmethod
    def from_rows(
        cls, field: FieldDescriptor, rows: Sequence[Sequence], cols: int | None = None
    ) -> Matrix:
        """Build a matrix from nested rows of ints, Fractions, text or scalars."""
        data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise DimensionError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise DimensionError("ragged rows")
        return cls(field, len(data), cols, data)

    @classmethod
    def zeros(cls, field: FieldDescriptor, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldDescriptor, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls(
            field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def from_flat(
        cls, field: FieldDescriptor, rows: int, cols: int, values: Sequence[Scalar]
    ) -> Matrix:
        return cls(
            field,
            rows,
            cols,
            tuple(tuple(values[i * cols:(i + 1) * cols]) for i in range(rows)),
        )

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def flat(self) -> list[Scalar]:
        return [x for r in self._data for x in r]

    def select_columns(self, idx: Iterable[int]) -> Matrix:
        idx = list(idx)
        return Matrix(
            self.field, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self._data)
        )

    def select_rows(self, idx: Iterable[int]) -> Matrix:
        data = tuple(self._data[i] for i in idx)
        return Matrix(self.field, len(data), self.cols, data)

    def vstack(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.cols != other.cols:
            raise DimensionError(f"vstack of {self.shape} and {other.shape}")
        return Matrix(self.field, self.rows + other.rows, self.cols, self._data + other._data)

    def hstack(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.rows != other.rows:
            raise DimensionError(f"hstack of {self.shape} and {other.shape}")
        data = tuple(a + b for a, b in zip(self._data, other._data))
        return Matrix(self.field, self.rows, self.cols + other.cols, data)

    # arithmetic

    def _same_field(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"matrices over {self.field} and {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        columns = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), zero) for col in columns)
            for row in self._data
        )
        return Matrix(self.field, self.rows, other.cols, data)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        data = tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        data = tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> Matrix:
        c = self.field.coerce(c)
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self._data))

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square:
            raise DimensionError(f"power of non-square {self.shape} matrix")
        if k < 0:
            raise ValueError("negative matrix power; use inverse()")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def H(self) -> Matrix:
        """Conjugate transpose: the involution ``*`` on matrices."""
        if self._star is None:
            self._star = conjugate_transpose(self)
            self._star._star = self
        return self._star

    @property
    def T(self) -> Matrix:
        """Plain transpose (no conjugation)."""
        data = tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols))
        return Matrix(self.field, self.cols, self.rows, data)

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def is_hermitian(self) -> bool:
        return self.is_square and self == self.H

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = len(rref(self)[1])
        return self._rank

    # comparison

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = [[self.field.format(x) for x in r] for r in self._data]
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {body})"

    # serialization

    def to_json(self) -> dict:
        doc = self.field.to_json()
        doc.update(
            rows=self.rows,
            cols=self.cols,
            entries=[[self.field.format(x) for x in r] for r in self._data],
        )
        return doc

    def entries_text(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, doc: dict) -> Matrix:
        if not isinstance(doc, dict):
            raise CorestarError("matrix document must be a JSON object")
        field = FieldDescriptor.from_json(doc)
        rows, cols, entries = doc.get("rows"), doc.get("cols"), doc.get("entries")
        for name, v in (("rows", rows), ("cols", cols)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise CorestarError(f"{name} must be a non-negative integer")
        if not isinstance(entries, list) or len(entries) != rows:
            raise DimensionError(f"entries must be a list of {rows} rows")
        for r in entries:
            if not isinstance(r, list) or len(r) != cols:
                raise DimensionError(f"every row must have {cols} entries")
            for x in r:
                if not isinstance(x, str):
                    raise CorestarError(f"entries must be scalar text, got {x!r}")
        return cls.from_rows(field, entries, cols=cols)


def conjugate_transpose(M: Matrix) -> Matrix:
    data = (
        tuple(tuple(x.conjugate() for x in col) for col in zip(*M._data))
        if M.rows
        else tuple(() for _ in range(M.cols))
    )
    return Matrix(M.field, M.cols, M.rows, data)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Columns are scanned left to right; the pivot is the topmost unused
    nonzero entry of the column.
    """
    rows = [list(r) for r in M._data]
    m, n = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        p = rows[r][c]
        if p != M.field.one:
            rows[r] = [x / p for x in rows[r]]
        pivot_row = rows[r]
        for i in range(m):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return Matrix(M.field, m, n, tuple(tuple(x) for x in rows)), pivots


def rank(M: Matrix) -> int:
    return M.rank


def solve(M: Matrix, rhs: Matrix) -> Matrix | None:
    """Some ``X`` with ``M @ X == rhs``, free parameters set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    if M.rows != rhs.rows:
        raise DimensionError(f"cannot solve {M.shape} against right side {rhs.shape}")
    R, pivots = rref(M.hstack(rhs))
    n = M.cols
    if pivots and pivots[-1] >= n:
        return None
    zero = M.field.zero
    out = [[zero] * rhs.cols for _ in range(n)]
    for i, c in enumerate(pivots):
        out[c] = list(R.row(i)[n:])
    return Matrix(M.field, n, rhs.cols, tuple(tuple(r) for r in out))


def solve_right_inverse(M: Matrix) -> Matrix | None:
    """``X`` with ``M @ X == I``, or ``None`` unless M has full row rank."""
    if M.rank != M.rows:
        return None
    return solve(M, Matrix.identity(M.field, M.rows))


def solve_left_inverse(M: Matrix) -> Matrix | None:
    """``X`` with ``X @ M == I``, or ``None`` unless M has full column rank."""
    if M.rank != M.cols:
        return None
    # X M = I  <=>  M^T X^T = I, transposes taken without conjugation
    return solve(M.T, Matrix.identity(M.field, M.cols)).T


def is_left_invertible(M: Matrix) -> bool:
    return M.rank == M.cols


def is_right_invertible(M: Matrix) -> bool:
    return M.rank == M.rows


def inverse(M: Matrix) -> Matrix | None:
    if not M.is_square:
        raise DimensionError(f"inverse of non-square {M.shape} matrix")
    if M.rank != M.rows:
        return None
    return solve(M, Matrix.identity(M.field, M.rows))


def row_basis(M: Matrix) -> Matrix:
    """Canonical (RREF) basis of the row space ``{x @ M}``."""
    R, pivots = rref(M)
    return R.select_rows(range(len(pivots)))


def left_null_basis(M: Matrix) -> Matrix:
    """Canonical (RREF) basis of ``{x : x @ M == 0}``."""
    return row_basis(right_null_basis(M.T).T)


def right_null_basis(M: Matrix) -> Matrix:
    """Basis of ``{y : M @ y == 0}``, one basis vector per column."""
    R, pivots = rref(M)
    field = M.field
    free = [c for c in range(M.cols) if c not in set(pivots)]
    zero, one = field.zero, field.one
    cols = []
    for f in free:
        v = [zero] * M.cols
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = -R[i, f]
        cols.append(v)
    if not cols:
        return Matrix.zeros(field, M.cols, 0)
    return Matrix.from_rows(field, cols).T


def subspace_report(M: Matrix) -> dict[str, Matrix]:
    return {"row_basis": row_basis(M), "left_null_basis": left_null_basis(M)}


# subspaces of F^m, each given by a matrix whose rows span it


def same_span(U: Matrix, V: Matrix) -> bool:
    return row_basis(U) == row_basis(V)


def is_direct_sum(U: Matrix, V: Matrix, dim: int) -> bool:
    """Whether span(U) + span(V) is an internal direct sum equal to F^dim."""
    ru, rv = U.rank, V.rank
    return ru + rv == dim and U.vstack(V).rank == dim
