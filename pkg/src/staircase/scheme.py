"""Scheme parameters and message-matrix layouts for Staircase codes.

A layout is the matrix ``M`` that gets multiplied by a Vandermonde matrix to
produce the shares.  Instead of values, each cell records where its value
comes from: a secret symbol, a key symbol, a copy of another cell, or zero.
The layout is split column-wise into blocks; block ``j`` has exactly ``d_j``
nonzero rows and a reader contacting ``d_j`` parties downloads the columns
of blocks ``1..j``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ParameterError
from .field import Field, binary8_field
from .matrix import Matrix, vandermonde

FIXED = "fixed"
UNIVERSAL = "universal"
DELTA = "delta"
KINDS = (FIXED, UNIVERSAL, DELTA)


@dataclass(frozen=True)
class SchemeParams:
    n: int
    k: int
    z: int
    kind: str
    d_list: tuple[int, ...]
    alpha: int
    field: Field = dc_field(default_factory=binary8_field)
    points: tuple[int, ...] = ()
    d_fixed: int | None = None
    delta_set: tuple[int, ...] = ()

    @property
    def t(self) -> int:
        return self.k + self.z

    @property
    def h(self) -> int:
        return len(self.d_list)

    @property
    def alpha_list(self) -> tuple[int, ...]:
        return tuple(d - self.z for d in self.d_list)

    @property
    def secret_len(self) -> int:
        return self.k * self.alpha

    @property
    def key_len(self) -> int:
        return self.z * self.alpha

    @property
    def layout_rows(self) -> int:
        return self.d_fixed if self.kind == FIXED else self.n

    def prefix_len(self, d: int) -> int:
        """Symbols per party a reader contacting ``d`` parties downloads."""
        if d not in self.d_list:
            raise ParameterError(f"d={d} is not supported; supported: {self.d_list}")
        return self.secret_len // (d - self.z)

    def kept_len(self, threshold: int) -> int:
        """Share symbols kept once the threshold has been raised to ``threshold``."""
        return self.prefix_len(threshold)

    def fingerprint(self) -> str:
        text = repr((self.kind, self.n, self.k, self.z, self.d_list,
                     self.field.kind, self.field.modulus, self.points))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _check_nkz(n: int, k: int, z: int):
    if z < 1:
        raise ParameterError(f"need z > 0, got z={z}")
    if k < 1:
        raise ParameterError(f"need k >= 1, got k={k}")
    if k + z > n:
        raise ParameterError(f"need t = k + z <= n, got k+z={k + z} > n={n}")


def _check_points(n: int, field: Field, points: Sequence[int] | None) -> tuple[int, ...]:
    if field.order <= n:
        raise ParameterError(f"need field order q > n, got q={field.order}, n={n}")
    points = tuple(range(1, n + 1)) if points is None else tuple(int(x) for x in points)
    if len(points) != n:
        raise ParameterError(f"need {n} evaluation points, got {len(points)}")
    # raises on duplicates, zeros or out-of-range entries
    vandermonde(field, points, 1)
    return points


def params_fixed(n: int, k: int, z: int, d: int, field: Field | None = None,
                 points: Sequence[int] | None = None) -> SchemeParams:
    _check_nkz(n, k, z)
    if not k + z <= d <= n:
        raise ParameterError(f"need k + z <= d <= n, got d={d} with t={k + z}, n={n}")
    field = field or binary8_field()
    t = k + z
    return SchemeParams(n, k, z, FIXED, (d, t) if d > t else (t,), d - z, field,
                        _check_points(n, field, points), d_fixed=d)


def _lcm_alpha(k: int, z: int, d_list: Sequence[int]) -> int:
    upper = [d - z for d in d_list[:-1]]
    return math.lcm(*upper) if upper else k


def params_universal(n: int, k: int, z: int, field: Field | None = None,
                     points: Sequence[int] | None = None) -> SchemeParams:
    _check_nkz(n, k, z)
    field = field or binary8_field()
    d_list = tuple(range(n, k + z - 1, -1))
    return SchemeParams(n, k, z, UNIVERSAL, d_list, _lcm_alpha(k, z, d_list), field,
                        _check_points(n, field, points))


def params_delta(n: int, k: int, z: int, delta: Iterable[int], field: Field | None = None,
                 points: Sequence[int] | None = None) -> SchemeParams:
    _check_nkz(n, k, z)
    delta = set(int(d) for d in delta)
    if not delta:
        raise ParameterError("the set of supported d values must not be empty")
    t = k + z
    bad = sorted(d for d in delta if not t <= d <= n)
    if bad:
        raise ParameterError(f"supported d values must satisfy {t} <= d <= {n}, got {bad}")
    field = field or binary8_field()
    d_list = tuple(sorted(delta | {t}, reverse=True))
    return SchemeParams(n, k, z, DELTA, d_list, _lcm_alpha(k, z, d_list), field,
                        _check_points(n, field, points), delta_set=tuple(sorted(delta)))


# -- cell provenance --------------------------------------------------------

@dataclass(frozen=True)
class Secret:
    index: int


@dataclass(frozen=True)
class Key:
    index: int


@dataclass(frozen=True)
class Duplicate:
    source: tuple[int, int]


@dataclass(frozen=True)
class Zero:
    pass


ZERO = Zero()
Cell = Union[Secret, Key, Duplicate, Zero]


@dataclass(frozen=True)
class Layout:
    params: SchemeParams
    grid: tuple[tuple[Cell, ...], ...]
    blocks: tuple[tuple[int, int], ...]

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def cell(self, row: int, col: int) -> Cell:
        return self.grid[row][col]

    def resolve(self, row: int, col: int) -> Cell:
        """Follow copies back to the primary (secret or key) cell."""
        seen = set()
        cell = self.grid[row][col]
        while isinstance(cell, Duplicate):
            if (row, col) in seen:
                raise ParameterError(f"duplicate cycle through cell {(row, col)}")
            seen.add((row, col))
            row, col = cell.source
            cell = self.grid[row][col]
        return cell

    def primary_coord(self, row: int, col: int) -> tuple[int, int]:
        cell = self.grid[row][col]
        while isinstance(cell, Duplicate):
            row, col = cell.source
            cell = self.grid[row][col]
        return row, col

    def block_nonzero_rows(self, j: int) -> int:
        start, stop = self.blocks[j]
        return sum(1 for r in range(self.rows)
                   if any(not isinstance(self.grid[r][c], Zero) for c in range(start, stop)))

    def replace(self, cells: dict[tuple[int, int], Cell]) -> "Layout":
        """Copy of this layout with some cells swapped; used for fault injection."""
        grid = [list(row) for row in self.grid]
        for (r, c), cell in cells.items():
            grid[r][c] = cell
        return Layout(self.params, tuple(tuple(row) for row in grid), self.blocks)

    def render(self) -> str:
        def name(cell):
            if isinstance(cell, Secret):
                return f"s{cell.index + 1}"
            if isinstance(cell, Key):
                return f"r{cell.index + 1}"
            if isinstance(cell, Duplicate):
                return name(self.grid[cell.source[0]][cell.source[1]]) + "*"
            return "0"
        return "\n".join(" ".join(f"{name(c):>5}" for c in row) for row in self.grid)


def _fixed_grid(p: SchemeParams):
    k, z, alpha, d, t = p.k, p.z, p.alpha, p.d_fixed, p.t
    grid = [[ZERO] * alpha for _ in range(d)]
    for c in range(k):
        for i in range(alpha):
            grid[i][c] = Secret(c * alpha + i)
        for i in range(z):
            grid[alpha + i][c] = Key(c * z + i)
    # D: transpose of rows t..d-1 of the stacked secret/key block
    for i in range(alpha - k):
        for c in range(k):
            grid[c][k + i] = Duplicate((t + i, c))
        for r in range(z):
            grid[k + r][k + i] = Key(z * k + i * z + r)
    blocks = ((0, k), (k, alpha)) if alpha > k else ((0, k),)
    return grid, blocks


def _staircase_grid(p: SchemeParams):
    n, k, z, alpha = p.n, p.k, p.z, p.alpha
    ka = k * alpha
    grid = [[ZERO] * alpha for _ in range(n)]
    a1 = p.alpha_list[0]
    w1 = ka // a1
    for c in range(w1):
        for i in range(a1):
            grid[i][c] = Secret(c * a1 + i)
        for i in range(z):
            grid[a1 + i][c] = Key(c * z + i)
    key_next = z * w1
    blocks = [(0, w1)]
    for j in range(1, p.h):
        d_prev, d_j = p.d_list[j - 1], p.d_list[j]
        a_j = d_j - z
        start, stop = ka // (d_prev - z), ka // a_j
        width = stop - start
        sources = []
        for r in range(d_j, d_prev):
            for c in range(start):
                cell = grid[r][c]
                sources.append(cell.source if isinstance(cell, Duplicate) else (r, c))
        assert len(sources) == a_j * width
        for m, src in enumerate(sources):
            grid[m % a_j][start + m // a_j] = Duplicate(src)
        for c in range(width):
            for i in range(z):
                grid[a_j + i][start + c] = Key(key_next + c * z + i)
        key_next += z * width
        blocks.append((start, stop))
    assert key_next == z * alpha
    return grid, tuple(blocks)


def build_layout(params: SchemeParams) -> Layout:
    if params.kind == FIXED:
        grid, blocks = _fixed_grid(params)
    elif params.kind in (UNIVERSAL, DELTA):
        grid, blocks = _staircase_grid(params)
    else:
        raise ParameterError(f"unknown scheme kind {params.kind!r}")
    return Layout(params, tuple(tuple(row) for row in grid), blocks)


def generator(params: SchemeParams, rows: int | None = None) -> Matrix:
    """The n x rows Vandermonde matrix used for encoding."""
    return vandermonde(params.field, params.points, rows or params.layout_rows)


def coefficient_maps(params: SchemeParams, layout: Layout,
                     points: Sequence[int] | None = None) -> tuple[Matrix, Matrix]:
    """Matrices (A, B) with share vector = A @ secret + B @ keys.

    Row ``party * alpha + symbol`` gives the coefficients of that share
    symbol, parties in index order.
    """
    f = params.field
    v = vandermonde(f, points or params.points, layout.rows).data
    cols = layout.cols
    a = np.zeros((params.n * cols, params.secret_len), dtype=np.int64)
    b = np.zeros((params.n * cols, params.key_len), dtype=np.int64)
    for r in range(layout.rows):
        for c in range(cols):
            cell = layout.resolve(r, c)
            if isinstance(cell, Secret):
                target, idx = a, cell.index
            elif isinstance(cell, Key):
                target, idx = b, cell.index
            else:
                continue
            rows = np.arange(params.n) * cols + c
            target[rows, idx] = f.add(target[rows, idx], v[:, r])
    return Matrix(f, a), Matrix(f, b)
