"""Storage accounting, compression rates, and the STPZ binary container.

Storage counts are in stored scalars (complex entries count as one), matching
the abstract accounting of the decomposition methods; the container spends
16 bytes per complex scalar.  Compression rates are exact rationals.

Container layout ("STPZ" v1, little-endian, no padding):

    magic    4 bytes  b"STPZ"
    version  u8       1
    flags    u8       bit0 = originally-real input, other bits reserved 0
    reserved 2 bytes  0
    m1 m2 n1 n2 l     u32 each
    R        l x u32  per-slice retained rank
    per slice i:      U_i (m1 x R_i complex), sigma_i (R_i f64),
                      C_i (m2 x n2 complex), V_i (n1 x R_i complex)

Complex scalars are (re, im) f64 pairs; matrices are column-major.  Trailing
bytes are a format error.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .decomp import MatStpSvd, TensorStpSvd
from .errors import DimensionError, FormatError

__all__ = [
    "Method",
    "StorageReport",
    "storage_count",
    "compression_rate",
    "storage_report",
    "serialize",
    "deserialize",
]

MAGIC = b"STPZ"
VERSION = 1
FLAG_REAL_INPUT = 0x01


class Method(str, Enum):
    RAW = "raw"
    FULL_TSVD = "full_tsvd"
    FULL_STPSVD = "full_stpsvd"
    TRUNC_TSVD = "trunc_tsvd"
    TRUNC_STPSVD = "trunc_stpsvd"


@dataclass
class StorageReport:
    method: Method
    count: int
    cr: Fraction


def _ranks(r, l: int, method: Method) -> list[int]:
    if r is None:
        raise DimensionError(f"method {method.value} requires a truncation rank")
    if isinstance(r, (int, np.integer)):
        return [int(r)] * l
    ranks = [int(v) for v in r]
    if len(ranks) != l:
        raise DimensionError(f"rank list has length {len(ranks)}, expected {l}")
    return ranks


def storage_count(
    method: Method,
    m1: int,
    m2: int,
    n1: int,
    n2: int,
    l: int,
    r: int | Sequence[int] | None = None,
) -> int:
    """Number of stored scalars for the given method.

    ``r`` (an int, or one int per slice) is required for the truncated
    methods.  m = m1*m2 and n = n1*n2 are the slice dimensions.
    """
    m, n = m1 * m2, n1 * n2
    if method is Method.RAW:
        return m * n * l
    if method is Method.FULL_TSVD:
        return (m + n + 1) * min(m, n) * l
    if method is Method.FULL_STPSVD:
        return ((m1 + n1 + 1) * min(m1, n1) + m2 * n2) * l
    if method is Method.TRUNC_TSVD:
        return sum((m + n + 1) * ri for ri in _ranks(r, l, method))
    if method is Method.TRUNC_STPSVD:
        return sum((m1 + n1 + 1) * ri + m2 * n2 for ri in _ranks(r, l, method))
    raise ValueError(f"unknown method {method!r}")


def compression_rate(
    method: Method,
    m1: int,
    m2: int,
    n1: int,
    n2: int,
    l: int,
    r: int | Sequence[int] | None = None,
) -> Fraction:
    """Stored-scalar count divided by the raw count, as an exact rational."""
    return Fraction(
        storage_count(method, m1, m2, n1, n2, l, r), m1 * m2 * n1 * n2 * l
    )


def storage_report(
    method: Method,
    m1: int,
    m2: int,
    n1: int,
    n2: int,
    l: int,
    r: int | Sequence[int] | None = None,
) -> StorageReport:
    count = storage_count(method, m1, m2, n1, n2, l, r)
    return StorageReport(
        method=method, count=count, cr=Fraction(count, m1 * m2 * n1 * n2 * l)
    )


def _mat_bytes(a: np.ndarray) -> bytes:
    return np.ascontiguousarray(a.ravel(order="F"), dtype="<c16").tobytes()


def serialize(F: TensorStpSvd) -> bytes:
    """Encode Fourier-domain factors into the STPZ v1 container."""
    m1, m2, n1, n2, l = F.dims
    if len(F.slices) != l:
        raise DimensionError(f"expected {l} slices, found {len(F.slices)}")
    flags = FLAG_REAL_INPUT if F.real_input else 0
    parts = [
        MAGIC,
        struct.pack("<BBH", VERSION, flags, 0),
        struct.pack("<5I", m1, m2, n1, n2, l),
        struct.pack(f"<{l}I", *F.block_rank),
    ]
    for i, s in enumerate(F.slices):
        r = s.rank
        if s.dims != (m1, m2, n1, n2):
            raise DimensionError(
                f"slice {i} dims {s.dims} differ from {(m1, m2, n1, n2)}"
            )
        if s.U.shape != (m1, r) or s.V.shape != (n1, r) or s.C.shape != (m2, n2):
            raise DimensionError(f"slice {i} factor shapes are inconsistent")
        parts.append(_mat_bytes(s.U))
        parts.append(np.ascontiguousarray(s.sigma, dtype="<f8").tobytes())
        parts.append(_mat_bytes(s.C))
        parts.append(_mat_bytes(s.V))
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int, what: str) -> bytes:
        if self.pos + size > len(self.data):
            raise FormatError(f"truncated container: expected {what}", self.pos)
        out = self.data[self.pos : self.pos + size]
        self.pos += size
        return out

    def matrix(self, rows: int, cols: int, what: str) -> np.ndarray:
        raw = self.take(16 * rows * cols, what)
        flat = np.frombuffer(raw, dtype="<c16").astype(np.complex128)
        return flat.reshape((rows, cols), order="F")


def deserialize(data: bytes) -> TensorStpSvd:
    """Decode an STPZ v1 container; exact inverse of :func:`serialize`."""
    rd = _Reader(bytes(data))
    if rd.take(4, "magic") != MAGIC:
        raise FormatError("bad magic, not an STPZ container", 0)
    version, flags, reserved = struct.unpack("<BBH", rd.take(4, "header"))
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}", 4)
    if flags & ~FLAG_REAL_INPUT:
        raise FormatError(f"unknown flag bits 0x{flags:02x}", 5)
    if reserved != 0:
        raise FormatError("reserved header bytes are nonzero", 6)
    m1, m2, n1, n2, l = struct.unpack("<5I", rd.take(20, "dimensions"))
    if min(m1, m2, n1, n2, l) < 1:
        raise FormatError(f"non-positive dimension in {(m1, m2, n1, n2, l)}", 8)
    ranks_at = rd.pos
    R = struct.unpack(f"<{l}I", rd.take(4 * l, "rank vector"))
    if any(r > min(m1, n1) for r in R):
        raise FormatError(
            f"rank vector {list(R)} exceeds min(m1, n1) = {min(m1, n1)}", ranks_at
        )
    slices = []
    for i, r in enumerate(R):
        U = rd.matrix(m1, r, f"slice {i} left factor")
        raw = rd.take(8 * r, f"slice {i} singular values")
        sigma = np.frombuffer(raw, dtype="<f8").astype(np.float64)
        C = rd.matrix(m2, n2, f"slice {i} Kronecker factor")
        V = rd.matrix(n1, r, f"slice {i} right factor")
        slices.append(MatStpSvd(U=U, sigma=sigma, C=C, V=V, dims=(m1, m2, n1, n2)))
    if rd.pos != len(rd.data):
        raise FormatError(
            f"{len(rd.data) - rd.pos} trailing bytes after factor payload", rd.pos
        )
    return TensorStpSvd(
        slices=slices,
        dims=(m1, m2, n1, n2, l),
        real_input=bool(flags & FLAG_REAL_INPUT),
    )
