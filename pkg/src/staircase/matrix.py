"""Dense matrices over a finite field and Gaussian elimination.

Pivoting takes the first nonzero entry at or below the current row, so
results are deterministic.  Row operations are vectorised with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError, SingularMatrixError
from .field import Field


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise ParameterError("matrix data must be two-dimensional")
        if data.size and (data.min() < 0 or data.max() >= self.field.order):
            raise ParameterError(f"entries out of range for {self.field!r}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]]) -> "Matrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ParameterError("ragged rows")
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), width))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, size: int) -> "Matrix":
        return cls(field, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, idx):
        return int(self.data[idx])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.tolist()})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def submatrix(self, rows=None, cols=None) -> "Matrix":
        data = self.data
        if rows is not None:
            data = data[list(rows)]
        if cols is not None:
            data = data[:, list(cols)]
        return Matrix(self.field, data)

    def hstack(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        if self.rows != other.rows:
            raise ParameterError("row count mismatch")
        return Matrix(self.field, np.hstack([self.data, other.data]))


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise ParameterError(f"mixed fields {a.field!r} and {b.field!r}")


def vandermonde(field: Field, points: Sequence[int], cols: int) -> Matrix:
    """Matrix with entry (i, j) = points[i] ** j."""
    if cols < 1:
        raise ParameterError("a Vandermonde matrix needs at least one column")
    points = [field.check(int(x)) for x in points]
    if len(set(points)) != len(points):
        raise ParameterError("evaluation points must be distinct")
    if 0 in points:
        raise ParameterError("evaluation points must be nonzero")
    if field.order <= len(points):
        raise ParameterError(f"{field!r} is too small for {len(points)} points")
    return Matrix.from_rows(field, [[field.pow(x, j) for j in range(cols)] for x in points])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ParameterError(f"cannot multiply {a.shape} by {b.shape}")
    return Matrix(a.field, a.field.matmul(a.data, b.data))


def _eliminate(field: Field, data: np.ndarray, ncols: int | None = None, full: bool = True):
    """Row-reduce ``data`` in place, pivoting only in the first ``ncols`` columns.

    With ``full`` the result is reduced row echelon form; otherwise only
    entries below each pivot are cleared, which is enough for rank.
    Returns the list of pivot columns.
    """
    rows, cols = data.shape
    ncols = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(data[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
        lead = int(data[r, c])
        if lead != 1:
            data[r, c:] = field.mul(field.inv(lead), data[r, c:])
        target = np.arange(rows) if full else np.arange(r + 1, rows)
        f = data[target, c]
        mask = f != 0
        if full:
            mask[r] = False
        target, f = target[mask], f[mask]
        if target.size:
            data[target, c:] = field.sub(data[target, c:],
                                         field.mul(f[:, None], data[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    data = a.data.copy()
    pivots = _eliminate(a.field, data)
    return Matrix(a.field, data), pivots


def rank(a: Matrix) -> int:
    data = a.data.copy()
    return len(_eliminate(a.field, data, full=False))


def solve(a: Matrix, rhs: Matrix) -> Matrix:
    """Return x with a @ x == rhs for square invertible ``a``."""
    _same_field(a, rhs)
    if a.rows != a.cols:
        raise ParameterError("solve needs a square matrix")
    if rhs.rows != a.rows:
        raise ParameterError("right-hand side row count mismatch")
    data = np.hstack([a.data, rhs.data])
    pivots = _eliminate(a.field, data, ncols=a.cols)
    if len(pivots) < a.rows:
        raise SingularMatrixError(f"matrix is singular (rank {len(pivots)} < {a.rows})",
                                  rank=len(pivots))
    return Matrix(a.field, data[:, a.cols:])


def inverse(a: Matrix) -> Matrix:
    return solve(a, Matrix.identity(a.field, a.rows))
