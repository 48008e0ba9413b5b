"""Encoding, read planning and decoding.

Both the encoder and the structured decoder are written against
``Field.add``/``Field.mul`` only, so every value may be an int or a numpy
array holding the same symbol for many independent blocks.
"""

from __future__ import annotations

import secrets as _secrets
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (CorruptionError, DecodabilityError, InsufficientPartiesError,
                     ParameterError)
from .field import BINARY8, Field, Value
from .matrix import Matrix, _eliminate, inverse
from .scheme import (Key, Layout, SchemeParams, Secret, Zero, coefficient_maps,
                     generator)

RandomSource = Callable[[int], bytes]


@dataclass(frozen=True)
class Share:
    params: SchemeParams
    index: int
    point: int
    symbols: tuple
    threshold: int

    @property
    def fingerprint(self) -> str:
        return self.params.fingerprint()

    @property
    def block_len(self) -> int:
        return self.params.kept_len(self.threshold)

    @property
    def block_count(self) -> int:
        return len(self.symbols) // self.block_len


@dataclass(frozen=True)
class ReadPlan:
    parties: tuple[int, ...]
    positions: dict[int, range]
    d: int
    co: Fraction
    ro: Fraction

    @property
    def symbols_per_party(self) -> int:
        return len(self.positions[self.parties[0]])

    @property
    def total_symbols(self) -> int:
        return sum(len(p) for p in self.positions.values())


# -- encoding ---------------------------------------------------------------

def _check_values(name: str, values: Sequence, expected: int, field: Field):
    if len(values) != expected:
        raise ParameterError(f"{name} must have {expected} symbols, got {len(values)}")
    for v in values:
        if isinstance(v, np.ndarray):
            if v.size and (v.min() < 0 or v.max() >= field.order):
                raise ParameterError(f"{name} values out of range for {field!r}")
        else:
            field.check(int(v))


def instantiate(layout: Layout, secret: Sequence[Value], keys: Sequence[Value]):
    """The message matrix with cell provenances replaced by values."""
    out = []
    for r in range(layout.rows):
        row = []
        for c in range(layout.cols):
            cell = layout.resolve(r, c)
            if isinstance(cell, Secret):
                row.append(secret[cell.index])
            elif isinstance(cell, Key):
                row.append(keys[cell.index])
            else:
                row.append(0)
        out.append(row)
    return out


def encode_values(params: SchemeParams, layout: Layout, secret: Sequence[Value],
                  keys: Sequence[Value]) -> list[list[Value]]:
    """Rows of C = V M; entry [party][symbol]."""
    f = params.field
    _check_values("secret", secret, params.secret_len, f)
    _check_values("keys", keys, params.key_len, f)
    m = instantiate(layout, secret, keys)
    v = generator(params, layout.rows).tolist()
    return [[f.dot(v[p], [m[r][c] for r in range(layout.rows)]) for c in range(layout.cols)]
            for p in range(params.n)]


def encode(params: SchemeParams, layout: Layout, secret: Sequence[int],
           keys: Sequence[int]) -> list[Share]:
    rows = encode_values(params, layout, [int(s) for s in secret], [int(r) for r in keys])
    return [Share(params, p, params.points[p], tuple(int(x) for x in rows[p]), params.t)
            for p in range(params.n)]


def random_symbols(field: Field, count: int, source: RandomSource | None = None) -> np.ndarray:
    """``count`` uniform field elements; rejection sampling avoids modulo bias."""
    source = source or _secrets.token_bytes
    if field.kind == BINARY8:
        raw = source(count)
        if len(raw) != count:
            raise OSError("randomness source returned too few bytes")
        return np.frombuffer(raw, dtype=np.uint8).astype(np.int64)
    width = 1 if field.order <= 256 else 2
    span = 1 << (8 * width)
    limit = span - span % field.order
    out = np.empty(0, dtype=np.int64)
    while out.size < count:
        need = count - out.size
        raw = source(need * width)
        if len(raw) != need * width:
            raise OSError("randomness source returned too few bytes")
        vals = np.frombuffer(raw, dtype=">u1" if width == 1 else ">u2").astype(np.int64)
        out = np.concatenate([out, vals[vals < limit] % field.order])
    return out[:count]


def draw_keys(params: SchemeParams, source: RandomSource | None = None) -> list[int]:
    return random_symbols(params.field, params.key_len, source).tolist()


# -- planning ---------------------------------------------------------------

def access_plan(params: SchemeParams, contacted: Iterable[int],
                threshold: int | None = None) -> ReadPlan:
    from .secrecy import overheads

    threshold = params.t if threshold is None else threshold
    contacted = sorted(set(int(i) for i in contacted))
    if any(not 0 <= i < params.n for i in contacted):
        raise ParameterError(f"party indices must lie in 0..{params.n - 1}")
    if len(contacted) < threshold:
        raise InsufficientPartiesError(
            f"need at least {threshold} parties, got {len(contacted)}")
    d = max(d for d in params.d_list if threshold <= d <= len(contacted))
    parties = tuple(contacted[:d])
    width = params.prefix_len(d)
    co, ro = overheads(params, d)
    return ReadPlan(parties, {p: range(width) for p in parties}, d, co, ro)


def read_symbols(plan: ReadPlan, shares: Mapping[int, Share] | Sequence[Share]):
    """Pick out exactly the planned symbols, keyed by (party, position)."""
    if not isinstance(shares, Mapping):
        shares = {s.index: s for s in shares}
    return {(p, pos): shares[p].symbols[pos] for p in plan.parties for pos in plan.positions[p]}


# -- decoding ---------------------------------------------------------------

def _gather(plan: ReadPlan, symbols: Mapping[tuple[int, int], Value]):
    width = plan.symbols_per_party
    try:
        return [[symbols[(p, c)] for c in range(width)] for p in plan.parties]
    except KeyError as exc:
        raise DecodabilityError(f"missing symbol {exc.args[0]}") from None


def _differs(a: Value, b: Value) -> bool:
    return bool(np.any(np.asarray(a) != np.asarray(b)))


def decode_structured(params: SchemeParams, layout: Layout, plan: ReadPlan,
                      symbols: Mapping[tuple[int, int], Value], return_keys: bool = False):
    """Recover the secret by peeling blocks from the last read one down to the first.

    Each block, after subtracting rows already known through copies, is a
    square Vandermonde system in its top ``d`` rows.
    """
    f = params.field
    d = plan.d
    j = params.d_list.index(d)
    y = _gather(plan, symbols)
    v_full = generator(params, layout.rows).tolist()
    v = [v_full[p] for p in plan.parties]
    v_inv = inverse(Matrix.from_rows(f, [row[:d] for row in v])).tolist()
    known: dict[tuple[int, int], Value] = {}

    for b in range(j, -1, -1):
        start, stop = layout.blocks[b]
        for c in range(start, stop):
            rhs = [y[i][c] for i in range(d)]
            for r in range(d, layout.rows):
                cell = layout.grid[r][c]
                if isinstance(cell, Zero):
                    continue
                coord = layout.primary_coord(r, c)
                if coord not in known:
                    raise AssertionError(f"cell {(r, c)} needed before it was decoded")
                val = known[coord]
                rhs = [f.sub(rhs[i], f.mul(v[i][r], val)) for i in range(d)]
            for r in range(d):
                val = f.dot(v_inv[r], rhs)
                cell = layout.grid[r][c]
                if isinstance(cell, Zero):
                    if _differs(val, 0):
                        raise CorruptionError(f"nonzero value decoded for zero cell {(r, c)}")
                    continue
                coord = layout.primary_coord(r, c)
                if coord in known:
                    if _differs(known[coord], val):
                        raise CorruptionError(f"inconsistent copies of cell {coord}")
                else:
                    known[coord] = val

    secret: list = [None] * params.secret_len
    keys: dict[int, Value] = {}
    for (r, c), val in known.items():
        cell = layout.grid[r][c]
        if isinstance(cell, Secret):
            secret[cell.index] = val
        elif isinstance(cell, Key):
            keys[cell.index] = val
    if any(s is None for s in secret):
        raise AssertionError("structured decoder left secret symbols undetermined")
    if return_keys:
        return secret, keys
    return secret


def decode_oracle(params: SchemeParams, layout: Layout, plan: ReadPlan,
                  symbols: Mapping[tuple[int, int], int]) -> list[int]:
    """Generic decoder: eliminate over the full linear system of the read symbols.

    Key columns come first, so a secret coordinate is determined exactly when
    its column gets a pivot.
    """
    f = params.field
    a, b = coefficient_maps(params, layout)
    alpha = layout.cols
    rows, rhs = [], []
    for (p, pos), val in sorted(symbols.items()):
        rows.append(p * alpha + pos)
        rhs.append(int(val))
    nk, ns = params.key_len, params.secret_len
    system = np.hstack([b.data[rows], a.data[rows], np.array(rhs, dtype=np.int64)[:, None]])
    pivots = _eliminate(f, system, ncols=nk + ns)
    if np.any(system[len(pivots):, -1]):
        raise CorruptionError("read symbols are inconsistent")
    row_of = {c: i for i, c in enumerate(pivots)}
    missing = [i for i in range(ns) if nk + i not in row_of]
    if missing:
        raise DecodabilityError(f"secret symbols {missing} are not determined by the reads")
    # a pivot in a secret column has zero key part; all other secret columns are pivots too
    return [int(system[row_of[nk + i], -1]) for i in range(ns)]
