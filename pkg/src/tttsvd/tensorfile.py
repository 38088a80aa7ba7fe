"""Binary evaluation-tensor files.

Layout (little-endian)::

    offset  size        field
    0       4           magic b"EVT1"
    4       1           method tag: 0 exact, 1 svd, 2 hosvd
    5       2           rank, uint16 (0 for the exact tensor)
    7       19683 * 8   float64 values in state-code order
"""

from __future__ import annotations

import hashlib
import os
import struct

import numpy as np

from .evaluation import EvalTensor
from .game import N_STATES

MAGIC = b"EVT1"
_HEADER = struct.Struct("<4sBH")
FILE_SIZE = _HEADER.size + N_STATES * 8

METHOD_TAGS = {"exact": 0, "svd": 1, "hosvd": 2}
_TAG_METHODS = {v: k for k, v in METHOD_TAGS.items()}


class TensorFileError(ValueError):
    pass


class BadMagicError(TensorFileError):
    pass


def to_bytes(tensor: EvalTensor) -> bytes:
    rank = 0 if tensor.rank is None else tensor.rank
    header = _HEADER.pack(MAGIC, METHOD_TAGS[tensor.method], rank)
    return header + tensor.values.astype("<f8").tobytes()


def from_bytes(data: bytes) -> EvalTensor:
    if len(data) < _HEADER.size:
        raise TensorFileError(f"truncated tensor file ({len(data)} bytes)")
    magic, tag, rank = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if len(data) != FILE_SIZE:
        raise TensorFileError(f"expected {FILE_SIZE} bytes, got {len(data)}")
    if tag not in _TAG_METHODS:
        raise TensorFileError(f"unknown method tag {tag}")
    method = _TAG_METHODS[tag]
    values = np.frombuffer(data, dtype="<f8", offset=_HEADER.size)
    return EvalTensor(values, method, None if method == "exact" else rank)


def write_tensor(path: str | os.PathLike, tensor: EvalTensor) -> bytes:
    data = to_bytes(tensor)
    with open(path, "wb") as fh:
        fh.write(data)
    return data


def read_tensor(path: str | os.PathLike) -> EvalTensor:
    with open(path, "rb") as fh:
        return from_bytes(fh.read())


def checksum(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
