"""Portable binary dump of state vectors and dense operators.

Layout (all integers little-endian):

    bytes 0..3    magic "QRS1"
    bytes 4..7    n_c     uint32
    bytes 8..15   dim     uint64   (16 * n_c^4)
    bytes 16..39  basis-order tag, 24 bytes, NUL padded
    bytes 40..43  ndim    uint32
    then          shape   ndim * uint64
    then          payload complex128, little-endian, row-major

The tag pins the index convention so vectors survive a change of machine
or of library version.  Sparse matrices are densified on save; this format
is for desk-scale interchange, not archival of big operators.
"""

from __future__ import annotations

import struct

import numpy as np
from scipy import sparse

from .fock import FockSpace

__all__ = ["MAGIC", "ORDER_TAG", "save_array", "load_array"]

MAGIC = b"QRS1"
ORDER_TAG = b"cavity-major,spin-minor"
_TAG_LEN = 24
_HEADER = struct.Struct("<4sIQ24sI")


def save_array(path, arr, f: FockSpace) -> None:
    """Write an array tied to the Fock space f at path."""
    if sparse.issparse(arr):
        arr = arr.toarray()
    data = np.ascontiguousarray(np.asarray(arr, dtype=np.complex128))
    if data.dtype.byteorder == ">":  # big-endian host arrays
        data = data.astype("<c16")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, f.n_c, f.dim,
                              ORDER_TAG.ljust(_TAG_LEN, b"\0"), data.ndim))
        fh.write(struct.pack(f"<{data.ndim}Q", *data.shape))
        fh.write(data.astype("<c16", copy=False).tobytes(order="C"))


def load_array(path) -> tuple[np.ndarray, dict]:
    """Read an array back; returns (array, header metadata)."""
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) < _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, n_c, dim, tag, ndim = _HEADER.unpack(head)
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        tag = tag.rstrip(b"\0").decode("ascii")
        if dim != 16 * n_c ** 4:
            raise ValueError(
                f"{path}: header dim {dim} inconsistent with n_c {n_c}")
        shape = struct.unpack(f"<{ndim}Q", fh.read(8 * ndim))
        count = int(np.prod(shape)) if shape else 1
        payload = fh.read(16 * count)
        if len(payload) != 16 * count:
            raise ValueError(f"{path}: truncated payload")
    arr = np.frombuffer(payload, dtype="<c16").reshape(shape).copy()
    return arr, {"n_c": int(n_c), "dim": int(dim), "order": tag}
