"""Training examples and the ``ZHDS`` dataset file.

File layout, little-endian::

    magic     4 bytes  b"ZHDS"
    version   u32      1
    count     u32
    count records of 970 bytes:
        input   960 x u8  (0 or 1; plane-major 15 x 8 x 8)
        action  u16
        scale   f32       1.0, 0.5 or 0.1
        value   f32       1.0, 0.5 or 0.0
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..encoding import (
    N_ACTIONS, N_FEATURES, N_PLANES, TURN_BIT, LinearShape, PolicyTarget, action_table,
    decode_position, encode_position, policy_target, value_target,
)
from ..rules.bitboards import DIRECTIONS
from ..errors import FormatError
from ..rules.position import Position
from .records import GameRecord

MAGIC = b"ZHDS"
VERSION = 1
RECORD = np.dtype([("input", "u1", (N_FEATURES,)), ("action", "<u2"),
                   ("scale", "<f4"), ("value", "<f4")])
assert RECORD.itemsize == 970


@dataclass
class TrainingExample:
    input: np.ndarray
    policy: PolicyTarget
    value: float
    position: Position | None = field(default=None, compare=False, repr=False)

    def __eq__(self, other):
        if not isinstance(other, TrainingExample):
            return NotImplemented
        # scale and value are stored as f32, so compare at that precision
        return (np.array_equal(self.input, other.input)
                and self.policy.index == other.policy.index
                and np.float32(self.policy.scale) == np.float32(other.policy.scale)
                and np.float32(self.value) == np.float32(other.value))

    def get_position(self) -> Position:
        if self.position is None:
            ep = en_passant_hint(self.input, self.policy.index)
            self.position = decode_position(self.input, ep)
        return self.position


def en_passant_hint(tensor: np.ndarray, action: int) -> int | None:
    """The en-passant square implied by the recorded action, if any.

    The tensor has no en-passant plane, but a pawn stepping diagonally onto an
    empty square can only be an en-passant capture, so the recorded move
    restores the one piece of state the encoding drops.
    """
    shape = action_table().shapes[action]
    if not isinstance(shape, LinearShape) or shape.distance != 1 or shape.direction % 2 == 0:
        return None
    x = np.asarray(tensor).reshape(N_PLANES, 64)
    white = bool(x[13, TURN_BIT])
    df, dr = DIRECTIONS[shape.direction]
    to = shape.square
    frm = to - df - 8 * dr
    if dr != (1 if white else -1) or to >> 3 != (5 if white else 2):
        return None
    if not x[0 if white else 6, frm] or x[:12, to].any():
        return None
    return to


def examples_from_game(game: GameRecord) -> list[TrainingExample]:
    """One example per ply, every position from the game start included."""
    out = []
    for _, side, pos, move in game.positions():
        out.append(TrainingExample(encode_position(pos), policy_target(move, pos, game.result),
                                   value_target(game.result, side), pos))
    return out


def write_examples(examples, path) -> None:
    records = np.zeros(len(examples), dtype=RECORD)
    for i, ex in enumerate(examples):
        records[i]["input"] = np.asarray(ex.input, dtype=np.uint8).reshape(-1)
        records[i]["action"] = ex.policy.index
        records[i]["scale"] = ex.policy.scale
        records[i]["value"] = ex.value
    header = MAGIC + struct.pack("<II", VERSION, len(examples))
    Path(path).write_bytes(header + records.tobytes())


def export_dataset(games, path) -> list[TrainingExample]:
    examples = [ex for g in games for ex in examples_from_game(g)]
    write_examples(examples, path)
    return examples


def load_dataset(path) -> list[TrainingExample]:
    data = Path(path).read_bytes()
    if len(data) < 12:
        raise FormatError("truncated dataset header")
    if data[:4] != MAGIC:
        raise FormatError("bad magic, not a ZHDS dataset")
    version, count = struct.unpack("<II", data[4:12])
    if version != VERSION:
        raise FormatError(f"unsupported dataset version {version}")
    body = data[12:]
    if len(body) != count * RECORD.itemsize:
        raise FormatError(f"expected {count} records ({count * RECORD.itemsize} bytes), "
                          f"found {len(body)} bytes")
    records = np.frombuffer(body, dtype=RECORD)
    if records.size and records["input"].max() > 1:
        raise FormatError("input features must be 0 or 1")
    if records.size and records["action"].max() >= N_ACTIONS:
        raise FormatError("action index out of range")
    out = []
    for r in records:
        out.append(TrainingExample(r["input"].reshape(N_PLANES, 8, 8).copy(),
                                   PolicyTarget(int(r["action"]), float(r["scale"])),
                                   float(r["value"])))
    return out
