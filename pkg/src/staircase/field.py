"""Exact arithmetic over GF(p) for small primes p and over GF(2^8).

Elements are plain Python ints in ``[0, order)``.  Every binary operation
also accepts ``numpy`` integer arrays, so the codec can push a whole batch
of independent blocks through the same arithmetic in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import ParameterError

Value = Union[int, np.ndarray]

PRIME = "prime"
BINARY8 = "binary8"

# x^8 + x^4 + x^3 + x + 1
GF256_POLY = 0x11B
_GF256_GENERATOR = 0x03

MAX_PRIME = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for f in range(3, math.isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    modulus: int

    def __post_init__(self):
        if self.kind == PRIME:
            if not is_prime(self.modulus):
                raise ParameterError(f"modulus {self.modulus} is not prime")
            if self.modulus >= MAX_PRIME:
                raise ParameterError(f"prime fields are limited to p < {MAX_PRIME}")
        elif self.kind == BINARY8:
            if self.modulus != GF256_POLY:
                raise ParameterError("binary8 fields use the reduction polynomial 0x11B")
        else:
            raise ParameterError(f"unknown field kind {self.kind!r}")

    @property
    def order(self) -> int:
        return self.modulus if self.kind == PRIME else 256


def _gf256_tables():
    exp = [0] * 510
    log = [0] * 256
    x = 1
    for i in range(255):
        exp[i] = x
        log[x] = i
        # multiply by the generator 0x03 = x + 1
        y = x << 1
        if y & 0x100:
            y ^= GF256_POLY
        x = y ^ x
    exp[255:] = exp[:255]
    return exp, log


class Field:
    """Arithmetic context for one finite field.

    Immutable after construction; safe to share between threads.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.kind = spec.kind
        self.modulus = spec.modulus
        self.order = spec.order
        if self.kind == BINARY8:
            self._exp, self._log = _gf256_tables()
            table = np.zeros((256, 256), dtype=np.int64)
            for a in range(1, 256):
                la = self._log[a]
                table[a, 1:] = [self._exp[la + self._log[b]] for b in range(1, 256)]
            table.flags.writeable = False
            self._mul_table = table
            inv = np.zeros(256, dtype=np.int64)
            for a in range(1, 256):
                inv[a] = self._exp[255 - self._log[a]]
            inv.flags.writeable = False
            self._inv_table = inv

    def __repr__(self):
        if self.kind == PRIME:
            return f"GF({self.modulus})"
        return "GF(2^8)"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == PRIME else 2

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ParameterError(f"{a} is not an element of {self!r}")
        return a

    # -- arithmetic -------------------------------------------------------

    def add(self, a: Value, b: Value) -> Value:
        if self.kind == PRIME:
            return (a + b) % self.modulus
        return a ^ b

    def sub(self, a: Value, b: Value) -> Value:
        if self.kind == PRIME:
            return (a - b) % self.modulus
        return a ^ b

    def neg(self, a: Value) -> Value:
        if self.kind == PRIME:
            return (-a) % self.modulus
        return a

    def mul(self, a: Value, b: Value) -> Value:
        if self.kind == PRIME:
            return (a * b) % self.modulus
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            return self._mul_table[a, b]
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: Value) -> Value:
        if isinstance(a, np.ndarray):
            if np.any(a == 0):
                raise ZeroDivisionError("inverse of zero")
            if self.kind == PRIME:
                return np.array([pow(int(x), -1, self.modulus) for x in a.ravel()],
                                dtype=np.int64).reshape(a.shape)
            return self._inv_table[a]
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self.kind == PRIME:
            return pow(a, -1, self.modulus)
        return self._exp[255 - self._log[a]]

    def div(self, a: Value, b: int) -> Value:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.kind == PRIME:
            return pow(a, e, self.modulus)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % 255]

    def arith(self, op: str, a: int, b: int) -> int:
        """Dispatch one of ``add``, ``sub``, ``mul``, ``inv`` or ``pow`` by name."""
        self.check(a)
        if op == "inv":
            return self.inv(a)
        if op == "pow":
            return self.pow(a, b)
        if op not in ("add", "sub", "mul"):
            raise ParameterError(f"unknown operation {op!r}")
        self.check(b)
        return getattr(self, op)(a, b)

    def dot(self, coeffs: Sequence[int], values: Sequence[Value]) -> Value:
        """Linear combination sum(c * v); values may be ints or arrays."""
        acc: Value = 0
        for c, v in zip(coeffs, values):
            if c:
                acc = self.add(acc, v if c == 1 else self.mul(c, v))
        return acc

    # -- batched helpers --------------------------------------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of two 2-D integer arrays over this field."""
        if self.kind == PRIME:
            # entries < 2^16, so each product stays below 2^32 and int64 sums are safe
            return (a.astype(np.int64) @ b.astype(np.int64)) % self.modulus
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(a.shape[1]):
            out ^= self._mul_table[a[:, i][:, None], b[i][None, :]]
        return out


def field_make(spec: FieldSpec) -> Field:
    return Field(spec)


def prime_field(p: int) -> Field:
    return Field(FieldSpec(PRIME, p))


def binary8_field() -> Field:
    return _GF256


def bytes_to_symbols(data: bytes, field: Field) -> list[int]:
    if field.kind != BINARY8:
        raise ParameterError("byte payloads are only supported over GF(2^8)")
    return list(data)


def symbols_to_bytes(symbols: Sequence[int], field: Field) -> bytes:
    if field.kind != BINARY8:
        raise ParameterError("byte payloads are only supported over GF(2^8)")
    return bytes(symbols)


_GF256 = Field(FieldSpec(BINARY8, GF256_POLY))
