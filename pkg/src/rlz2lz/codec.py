"""Binary container formats.

RLZP::

    b"RLZP" | u8 version=1 | u64 ell | ell reference bytes | u64 z'
    | z' x (u64 src, u64 len)

LZ77::

    b"LZ77" | u8 version=1 | u64 n | u64 z | z x (u64 copy_len, u64 src, u8 last)

All integers little-endian; positions 1-based, ``src == 0`` encodes "no source".
"""

from __future__ import annotations

import struct
from typing import Union

import numpy as np

from .model import FormatError, Lz77Parse, Lz77Triple, RlzArchive, RlzPhrase

RLZP_MAGIC = b"RLZP"
LZ77_MAGIC = b"LZ77"
VERSION = 1

_U64 = struct.Struct("<Q")
_PAIR = np.dtype([("src", "<u8"), ("len", "<u8")])
_TRIPLE = np.dtype([("copy_len", "<u8"), ("src", "<u8"), ("last", "u1")])


def encode_file(value: Union[RlzArchive, Lz77Parse]) -> bytes:
    if isinstance(value, RlzArchive):
        recs = np.array([tuple(p) for p in value.phrases], dtype=_PAIR)
        return b"".join([
            RLZP_MAGIC, bytes([VERSION]),
            _U64.pack(value.ell), value.reference,
            _U64.pack(len(recs)), recs.tobytes(),
        ])
    if isinstance(value, Lz77Parse):
        recs = np.array(
            [(t.copy_len, t.src or 0, t.last) for t in value.triples], dtype=_TRIPLE
        )
        return b"".join([
            LZ77_MAGIC, bytes([VERSION]),
            _U64.pack(value.n), _U64.pack(len(recs)), recs.tobytes(),
        ])
    raise TypeError(f"cannot encode {type(value).__name__}")


class _Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.pos = 0

    def take(self, size: int) -> memoryview:
        if size < 0 or self.pos + size > len(self.data):
            raise FormatError(f"truncated stream at offset {self.pos} (needed {size} bytes)")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def records(self, count: int, dtype: np.dtype) -> np.ndarray:
        if count > len(self.data):
            raise FormatError(f"record count {count} exceeds stream size")
        return np.frombuffer(self.take(count * dtype.itemsize), dtype=dtype)

    def finish(self) -> None:
        if self.pos != len(self.data):
            raise FormatError(f"{len(self.data) - self.pos} trailing bytes after payload")


def sniff(data: bytes) -> str:
    """Return ``"RLZP"`` or ``"LZ77"`` for a stream header, else raise."""
    magic = bytes(data[:4])
    if magic == RLZP_MAGIC:
        return "RLZP"
    if magic == LZ77_MAGIC:
        return "LZ77"
    raise FormatError(f"unknown magic {magic!r}")


def decode_file(data: bytes) -> Union[RlzArchive, Lz77Parse]:
    kind = sniff(data)
    rd = _Reader(data)
    rd.take(4)
    version = rd.take(1)[0]
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    if kind == "RLZP":
        ell = rd.u64()
        reference = bytes(rd.take(ell))
        recs = rd.records(rd.u64(), _PAIR)
        rd.finish()
        phrases = tuple(RlzPhrase(int(s), int(l)) for s, l in recs.tolist())
        return RlzArchive(reference, phrases)
    n = rd.u64()
    recs = rd.records(rd.u64(), _TRIPLE)
    rd.finish()
    triples = tuple(
        Lz77Triple(c, s if s else None, last) for c, s, last in recs.tolist()
    )
    if sum(t.copy_len + 1 for t in triples) != n:
        raise FormatError(f"triples do not cover the declared length n={n}")
    return Lz77Parse(triples, n)
