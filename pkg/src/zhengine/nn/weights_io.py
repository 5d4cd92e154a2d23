"""``ZHNN`` weights files.

Layout, all little-endian::

    magic        4 bytes  b"ZHNN"
    version      u32      1
    config       4 x u32  blocks, channels, policy_head_planes, value_head_planes
    per layer, in ``layer_shapes(config)`` order:
        rank     u32
        dims     rank x u32
        values   prod(dims) x f32

Nothing may follow the last layer.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from ..errors import FormatError, ShapeMismatch
from .network import NetworkConfig, NetworkWeights, layer_shapes

MAGIC = b"ZHNN"
VERSION = 1


def save_weights(path, config: NetworkConfig, weights: NetworkWeights) -> None:
    weights.validate(config)
    parts = [MAGIC, struct.pack("<I", VERSION), struct.pack("<4I", *config.as_tuple())]
    for name, shape in layer_shapes(config):
        t = np.ascontiguousarray(weights[name], dtype="<f4")
        parts.append(struct.pack(f"<I{len(shape)}I", len(shape), *shape))
        parts.append(t.tobytes())
    Path(path).write_bytes(b"".join(parts))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise FormatError(f"truncated file: wanted {n} bytes at offset {self.pos}")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u32(self, count: int = 1):
        return struct.unpack(f"<{count}I", self.take(4 * count))


def load_weights(path) -> tuple[NetworkConfig, NetworkWeights]:
    r = _Reader(Path(path).read_bytes())
    if r.take(4) != MAGIC:
        raise FormatError("bad magic, not a ZHNN weights file")
    (version,) = r.u32()
    if version != VERSION:
        raise FormatError(f"unsupported weights version {version}")
    try:
        config = NetworkConfig(*r.u32(4))
    except ValueError as exc:
        raise FormatError(f"invalid network config: {exc}") from None
    tensors = {}
    for name, shape in layer_shapes(config):
        (rank,) = r.u32()
        dims = r.u32(rank) if rank else ()
        if tuple(dims) != shape:
            raise ShapeMismatch(f"{name}: file has {tuple(dims)}, config implies {shape}")
        count = int(np.prod(shape))
        tensors[name] = np.frombuffer(r.take(4 * count), dtype="<f4").reshape(shape).copy()
    if r.pos != len(r.data):
        raise FormatError(f"{len(r.data) - r.pos} trailing bytes after last layer")
    weights = NetworkWeights(tensors)
    weights.validate(config)
    return config, weights
