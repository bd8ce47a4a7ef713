"""Self-describing binary tensor container with a JSON sidecar.

File layout (little-endian throughout):

    bytes 0-3   magic  b"STT1"
    bytes 4-5   dtype code (uint16): 1=float32 2=float64 3=int16 4=int32 5=int64 6=uint8
    bytes 6-7   rank (uint16)
    8 bytes per dimension (uint64)
    raw array data, C order

Re-reads are bit-exact. Metadata (labels, channel names, transform
settings) lives in "<path>.json" next to the tensor file.
"""

from __future__ import annotations

import json
import os
import struct

import numpy as np

MAGIC = b"STT1"

_DTYPE_CODES = {
    np.dtype("float32"): 1,
    np.dtype("float64"): 2,
    np.dtype("int16"): 3,
    np.dtype("int32"): 4,
    np.dtype("int64"): 5,
    np.dtype("uint8"): 6,
}
_CODE_DTYPES = {v: k for k, v in _DTYPE_CODES.items()}


def write_tensor(path, array: np.ndarray, meta: dict | None = None) -> None:
    array = np.ascontiguousarray(array)
    if array.dtype not in _DTYPE_CODES:
        raise ValueError(f"unsupported dtype {array.dtype}")
    header = MAGIC + struct.pack("<HH", _DTYPE_CODES[array.dtype], array.ndim)
    header += struct.pack(f"<{array.ndim}Q", *array.shape)
    tmp = str(path) + ".tmp"
    with open(tmp, "wb") as f:
        f.write(header)
        f.write(array.astype(array.dtype.newbyteorder("<")).tobytes())
    os.replace(tmp, path)
    if meta is not None:
        with open(str(path) + ".json", "w") as f:
            json.dump(meta, f, indent=1)


def read_tensor(path, with_meta: bool = False):
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] != MAGIC:
        raise ValueError(f"{path}: not a tensor container (magic {data[:4]!r})")
    code, rank = struct.unpack_from("<HH", data, 4)
    if code not in _CODE_DTYPES:
        raise ValueError(f"{path}: unknown dtype code {code}")
    dims = struct.unpack_from(f"<{rank}Q", data, 8)
    dtype = _CODE_DTYPES[code].newbyteorder("<")
    count = int(np.prod(dims)) if rank else 1
    offset = 8 + 8 * rank
    array = np.frombuffer(data, dtype=dtype, count=count, offset=offset)
    array = array.reshape(dims).astype(_CODE_DTYPES[code])
    if not with_meta:
        return array
    meta_path = str(path) + ".json"
    meta = None
    if os.path.exists(meta_path):
        with open(meta_path) as f:
            meta = json.load(f)
    return array, meta
