"""Binary share-file format.

All integers are big-endian::

    magic "SCSS" | version u8 | scheme kind u8 | field kind u8 | modulus u16
    n u16 | k u16 | z u16 | d u16 | delta count u16 | delta values u16...
    threshold u16 | share index u16 | point u16 | secret length u64
    block count u32 | payload

The payload holds ``block count`` blocks of the symbols kept at the
current threshold, one byte per symbol over GF(2^8) and two bytes over a
prime field.
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import FormatError, ParameterError
from .field import BINARY8, PRIME, Field, FieldSpec
from .scheme import DELTA, FIXED, UNIVERSAL, SchemeParams, params_delta, params_fixed, params_universal

MAGIC = b"SCSS"
VERSION = 1
_KIND_CODES = {FIXED: 0, UNIVERSAL: 1, DELTA: 2}
_FIELD_CODES = {PRIME: 0, BINARY8: 1}
_HEAD = struct.Struct(">4sBBBHHHHHH")
_TAIL = struct.Struct(">HHHQI")


@dataclass(frozen=True)
class ShareHeader:
    kind: str
    field_kind: str
    modulus: int
    n: int
    k: int
    z: int
    d: int
    delta: tuple[int, ...]
    threshold: int
    index: int
    point: int
    secret_len: int
    block_count: int

    @classmethod
    def for_params(cls, params: SchemeParams, index: int, threshold: int,
                   secret_len: int, block_count: int) -> "ShareHeader":
        return cls(params.kind, params.field.kind, params.field.modulus, params.n, params.k,
                   params.z, params.d_fixed or 0, params.delta_set, threshold, index,
                   params.points[index], secret_len, block_count)

    def params(self) -> SchemeParams:
        f = Field(FieldSpec(self.field_kind, self.modulus))
        if self.kind == FIXED:
            return params_fixed(self.n, self.k, self.z, self.d, field=f)
        if self.kind == UNIVERSAL:
            return params_universal(self.n, self.k, self.z, field=f)
        return params_delta(self.n, self.k, self.z, self.delta, field=f)

    @property
    def symbol_width(self) -> int:
        return 1 if self.field_kind == BINARY8 else 2

    @property
    def block_len(self) -> int:
        return self.params().kept_len(self.threshold)

    @property
    def size(self) -> int:
        return _HEAD.size + 2 * len(self.delta) + _TAIL.size

    @property
    def payload_len(self) -> int:
        return self.block_count * self.block_len * self.symbol_width

    def set_key(self) -> tuple:
        """Fields every share of one set agrees on."""
        return (self.kind, self.field_kind, self.modulus, self.n, self.k, self.z, self.d,
                self.delta, self.threshold, self.secret_len, self.block_count)

    def pack(self) -> bytes:
        head = _HEAD.pack(MAGIC, VERSION, _KIND_CODES[self.kind], _FIELD_CODES[self.field_kind],
                          self.modulus, self.n, self.k, self.z, self.d, len(self.delta))
        delta = struct.pack(f">{len(self.delta)}H", *self.delta)
        tail = _TAIL.pack(self.threshold, self.index, self.point, self.secret_len,
                          self.block_count)
        return head + delta + tail

    @classmethod
    def unpack(cls, buf: bytes) -> "ShareHeader":
        if len(buf) < _HEAD.size:
            raise FormatError("file too short for a share header")
        magic, version, kind, fkind, modulus, n, k, z, d, count = _HEAD.unpack_from(buf)
        if magic != MAGIC:
            raise FormatError("not a share file (bad magic)")
        if version != VERSION:
            raise FormatError(f"unsupported share format version {version}")
        kinds = {v: key for key, v in _KIND_CODES.items()}
        fields = {v: key for key, v in _FIELD_CODES.items()}
        if kind not in kinds or fkind not in fields:
            raise FormatError("unknown scheme or field kind code")
        end = _HEAD.size + 2 * count
        if len(buf) < end + _TAIL.size:
            raise FormatError("file too short for a share header")
        delta = struct.unpack_from(f">{count}H", buf, _HEAD.size)
        threshold, index, point, secret_len, blocks = _TAIL.unpack_from(buf, end)
        header = cls(kinds[kind], fields[fkind], modulus, n, k, z, d, tuple(delta), threshold,
                     index, point, secret_len, blocks)
        try:
            params = header.params()
            params.kept_len(threshold)
        except ParameterError as exc:
            raise FormatError(f"invalid parameters in share header: {exc}") from None
        if not 0 <= index < n:
            raise FormatError(f"share index {index} out of range")
        # share files always use the default evaluation points 1..n
        if point != index + 1:
            raise FormatError(f"share {index} has unexpected evaluation point {point}")
        return header


def read_header(path) -> ShareHeader:
    with open(path, "rb") as fh:
        head = fh.read(_HEAD.size)
        if len(head) >= _HEAD.size:
            count = struct.unpack_from(">H", head, _HEAD.size - 2)[0]
            head += fh.read(2 * count + _TAIL.size)
        header = ShareHeader.unpack(head)
        fh.seek(0, os.SEEK_END)
        if fh.tell() != header.size + header.payload_len:
            raise FormatError(f"{path}: payload length does not match the header")
    return header


def _dtype(header: ShareHeader):
    return np.dtype(">u1") if header.symbol_width == 1 else np.dtype(">u2")


def read_share(path) -> tuple[ShareHeader, np.ndarray]:
    """Header and payload as a (blocks, block_len) array."""
    header = read_header(path)
    with open(path, "rb") as fh:
        fh.seek(header.size)
        raw = fh.read(header.payload_len)
    arr = np.frombuffer(raw, dtype=_dtype(header)).astype(np.int64)
    return header, arr.reshape(header.block_count, header.block_len)


def read_prefix(path, header: ShareHeader, width: int) -> tuple[np.ndarray, int]:
    """The first ``width`` symbols of every block, reading nothing else.

    Returns the (blocks, width) array and the number of payload bytes read.
    """
    sw, blen = header.symbol_width, header.block_len
    if width > blen:
        raise ParameterError(f"cannot read {width} symbols from blocks of {blen}")
    chunks = []
    read = 0
    with open(path, "rb") as fh:
        if width == blen:
            fh.seek(header.size)
            raw = fh.read(header.payload_len)
            chunks.append(raw)
            read = len(raw)
        else:
            for b in range(header.block_count):
                fh.seek(header.size + b * blen * sw)
                raw = fh.read(width * sw)
                chunks.append(raw)
                read += len(raw)
    raw = b"".join(chunks)
    if len(raw) != header.block_count * width * sw:
        raise FormatError(f"{path}: share file is truncated")
    arr = np.frombuffer(raw, dtype=_dtype(header)).astype(np.int64)
    return arr.reshape(header.block_count, width), read


def write_share(path, header: ShareHeader, payload: np.ndarray):
    """Write atomically: temp file in the target directory, then rename."""
    payload = np.asarray(payload)
    if payload.shape != (header.block_count, header.block_len):
        raise ParameterError(f"payload shape {payload.shape} does not match header")
    data = header.pack() + payload.astype(_dtype(header)).tobytes()
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def with_threshold(header: ShareHeader, threshold: int) -> ShareHeader:
    return replace(header, threshold=threshold)
