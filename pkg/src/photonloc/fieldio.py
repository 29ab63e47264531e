"""BBF1 binary field snapshots.

Layout (little endian)::

    0   4s  magic b"BBF1"
    4   u32 version (1)
    8   u32 n
    12  f64 L
    20  u8  domain (0 position, 1 spectral)
    21  6*n^3 f64: (re, im) pairs, component-major, x fastest

The derivative order of a Grid is not part of the format; readers pass it.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .lattice import DEFAULT_ORDER, ComplexField3, Domain, Grid

MAGIC = b"BBF1"
VERSION = 1
_HEADER = struct.Struct("<4sIIdB")


class FieldFormatError(ValueError):
    pass


def write_field(path, f: ComplexField3) -> None:
    g = f.grid
    header = _HEADER.pack(MAGIC, VERSION, g.n, g.L, f.domain.value)
    # (c, x, y, z) -> (c, z, y, x) so that x runs fastest in C order
    payload = np.ascontiguousarray(f.data.transpose(0, 3, 2, 1)).astype("<c16")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload.tobytes())


def read_field(path, order: int = DEFAULT_ORDER, expect_n: int | None = None) -> ComplexField3:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FieldFormatError("truncated header")
    magic, version, n, L, domain = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FieldFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FieldFormatError(f"unsupported BBF1 version {version}")
    if expect_n is not None and n != expect_n:
        raise FieldFormatError(f"dimension mismatch: file has n={n}, expected {expect_n}")
    expected = 6 * n ** 3 * 8
    body = len(raw) - _HEADER.size
    if body < expected:
        raise FieldFormatError(f"truncated payload: {body} bytes, need {expected}")
    if body > expected:
        raise FieldFormatError(f"dimension mismatch: {body - expected} trailing bytes for n={n}")
    data = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(3, n, n, n)
    data = data.transpose(0, 3, 2, 1).astype(np.complex128)
    return ComplexField3._own(Grid(n, L, order), Domain(domain), np.ascontiguousarray(data))


def field_io(path, f: ComplexField3 | None = None, mode: str = "read", **kw):
    """Single entry point: ``mode='write'`` stores ``f``, ``mode='read'`` returns a field."""
    if mode == "write":
        if f is None:
            raise ValueError("write mode needs a field")
        write_field(path, f)
        return None
    if mode == "read":
        return read_field(path, **kw)
    raise ValueError(f"mode must be 'read' or 'write', got {mode!r}")
