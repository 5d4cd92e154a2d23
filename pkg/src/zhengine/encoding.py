"""Board tensor (15x8x8 = 960 binary features) and the 2308-entry action space.

Action layout, in index order:

* drops ``[0, 304)``: pawn, knight, bishop, rook, queen; landing squares in
  index order, pawns skipping the first and last rank.
* linear ``[304, 1820)``: directions N, NE, E, SE, S, SW, W, NW; distances
  1..7; landing squares whose origin is on the board (distance-1 diagonal
  planes keep all 64 squares).
* knight ``[1820, 2236)``: eight (drank, dfile) jumps; only landing ranks
  that the rank delta makes unreachable are removed.
* underpromotion ``[2236, 2308)``: knight, bishop, rook; left capture, push,
  right capture as seen by the mover; landing file a..h.

Board planes and move directions are absolute. Only the underpromotion block
is relative to the side to move, which fixes the landing rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import IllegalIndex, UnencodableMove
from .rules.bitboards import DIRECTIONS
from .rules.position import (
    BoardMove, Color, Drop, GameResult, Move, PieceKind, Position, square_file, square_rank,
)

N_PLANES = 15
N_FEATURES = N_PLANES * 64
N_ACTIONS = 2308

DROP_OFFSET = 0
LINEAR_OFFSET = 304
KNIGHT_OFFSET = 1820
UNDERPROMOTION_OFFSET = 2236

DIRECTION_NAMES = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")
# (drank, dfile)
KNIGHT_JUMPS = ((2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1))
UNDERPROMOTION_PIECES = (PieceKind.KNIGHT, PieceKind.BISHOP, PieceKind.ROOK)
LANES = ("left-capture", "push", "right-capture")

# plane 13 layout: (color, kind) thermometer groups, then the two turn bits
POCKET_GROUPS = tuple(
    (color, kind, width)
    for kind, width in ((0, 16), (1, 4), (2, 4), (3, 4), (4, 2))
    for color in (0, 1)
)
TURN_BIT = sum(width for _, _, width in POCKET_GROUPS)  # 60; bits 62-63 stay zero


# -- move shapes -----------------------------------------------------------

@dataclass(frozen=True)
class DropShape:
    kind: PieceKind
    square: int

    def __str__(self):
        return f"drop {self.kind.name.lower()} {_sq(self.square)}"


@dataclass(frozen=True)
class LinearShape:
    direction: int
    distance: int
    square: int

    def __str__(self):
        return f"linear {DIRECTION_NAMES[self.direction]} {self.distance} {_sq(self.square)}"


@dataclass(frozen=True)
class KnightShape:
    jump: int
    square: int

    def __str__(self):
        dr, df = KNIGHT_JUMPS[self.jump]
        return f"knight ({dr:+d},{df:+d}) {_sq(self.square)}"


@dataclass(frozen=True)
class UnderpromotionShape:
    piece: PieceKind
    lane: int
    file: int

    def __str__(self):
        return f"underpromotion {self.piece.name.lower()} {LANES[self.lane]} {'abcdefgh'[self.file]}"


MoveShape = DropShape | LinearShape | KnightShape | UnderpromotionShape


def _sq(sq: int) -> str:
    return "abcdefgh"[sq & 7] + str((sq >> 3) + 1)


@dataclass(frozen=True)
class ActionTable:
    shapes: tuple[MoveShape, ...]
    index: dict

    def __len__(self):
        return len(self.shapes)

    def section_sizes(self) -> dict[str, int]:
        sizes = {"drop": 0, "linear": 0, "knight": 0, "underpromotion": 0}
        names = {DropShape: "drop", LinearShape: "linear", KnightShape: "knight",
                 UnderpromotionShape: "underpromotion"}
        for s in self.shapes:
            sizes[names[type(s)]] += 1
        return sizes

    def dump(self) -> str:
        return "".join(f"{i}\t{s}\n" for i, s in enumerate(self.shapes))


def _origin_on_board(landing: int, direction: int, distance: int) -> bool:
    df, dr = DIRECTIONS[direction]
    f = (landing & 7) - df * distance
    r = (landing >> 3) - dr * distance
    return 0 <= f < 8 and 0 <= r < 8


def build_action_table() -> ActionTable:
    shapes: list[MoveShape] = []
    for kind in (PieceKind.PAWN, PieceKind.KNIGHT, PieceKind.BISHOP, PieceKind.ROOK,
                 PieceKind.QUEEN):
        for sq in range(64):
            if kind == PieceKind.PAWN and square_rank(sq) in (0, 7):
                continue
            shapes.append(DropShape(kind, sq))
    for direction in range(8):
        diagonal = direction % 2 == 1
        for distance in range(1, 8):
            for sq in range(64):
                if (diagonal and distance == 1) or _origin_on_board(sq, direction, distance):
                    shapes.append(LinearShape(direction, distance, sq))
    for jump, (dr, _df) in enumerate(KNIGHT_JUMPS):
        for sq in range(64):
            r = square_rank(sq) - dr
            if 0 <= r < 8:
                shapes.append(KnightShape(jump, sq))
    for piece in UNDERPROMOTION_PIECES:
        for lane in range(3):
            for file in range(8):
                shapes.append(UnderpromotionShape(piece, lane, file))
    shapes_t = tuple(shapes)
    return ActionTable(shapes_t, {s: i for i, s in enumerate(shapes_t)})


@lru_cache(maxsize=1)
def action_table() -> ActionTable:
    return build_action_table()


# -- move <-> index --------------------------------------------------------

def _lane_delta(lane: int, color: int) -> int:
    # file delta of the move for a lane; left/right read from the mover's side
    delta = lane - 1
    return delta if color == Color.WHITE else -delta


def move_shape(pos: Position, move: Move) -> MoveShape:
    if isinstance(move, Drop):
        if move.kind == PieceKind.PAWN and square_rank(move.to_square) in (0, 7):
            raise UnencodableMove(f"pawn drop on back rank: {move}")
        return DropShape(move.kind, move.to_square)
    frm, to = move.from_square, move.to_square
    df = square_file(to) - square_file(frm)
    dr = square_rank(to) - square_rank(frm)
    if move.promotion in UNDERPROMOTION_PIECES:
        color = pos.turn
        if abs(df) > 1 or abs(dr) != 1:
            raise UnencodableMove(f"not a pawn promotion step: {move}")
        lane = df + 1 if color == Color.WHITE else 1 - df
        return UnderpromotionShape(move.promotion, lane, square_file(to))
    if (abs(dr), abs(df)) in ((1, 2), (2, 1)):
        return KnightShape(KNIGHT_JUMPS.index((dr, df)), to)
    if df == 0 or dr == 0 or abs(df) == abs(dr):
        if df == 0 and dr == 0:
            raise UnencodableMove(f"null move: {move}")
        distance = max(abs(df), abs(dr))
        unit = ((df > 0) - (df < 0), (dr > 0) - (dr < 0))
        return LinearShape(DIRECTIONS.index(unit), distance, to)
    raise UnencodableMove(f"no action section accepts {move}")


def move_to_index(pos: Position, move: Move) -> int:
    shape = move_shape(pos, move)
    try:
        return action_table().index[shape]
    except KeyError:
        raise UnencodableMove(f"shape {shape} not in action table") from None


def index_to_move(pos: Position, index: int) -> Move:
    """Decode an action index into the move it denotes in ``pos``.

    Raises IllegalIndex when the decoded move is not legal there.
    """
    table = action_table()
    if not 0 <= index < len(table):
        raise IllegalIndex(f"index {index} outside 0..{len(table) - 1}")
    shape = table.shapes[index]
    move = _shape_to_move(pos, shape)
    if move is None or not pos.is_legal(move):
        raise IllegalIndex(f"index {index} ({shape}) is not a legal move here")
    return move


def _shape_to_move(pos: Position, shape: MoveShape) -> Move | None:
    if isinstance(shape, DropShape):
        return Drop(shape.kind, shape.square)
    if isinstance(shape, UnderpromotionShape):
        color = pos.turn
        to_rank, from_rank = (7, 6) if color == Color.WHITE else (0, 1)
        from_file = shape.file - _lane_delta(shape.lane, color)
        if not 0 <= from_file < 8:
            return None
        return BoardMove(from_rank * 8 + from_file, to_rank * 8 + shape.file, shape.piece)
    if isinstance(shape, KnightShape):
        dr, df = KNIGHT_JUMPS[shape.jump]
        f, r = square_file(shape.square) - df, square_rank(shape.square) - dr
        if not (0 <= f < 8 and 0 <= r < 8):
            return None
        return BoardMove(r * 8 + f, shape.square)
    df, dr = DIRECTIONS[shape.direction]
    f = square_file(shape.square) - df * shape.distance
    r = square_rank(shape.square) - dr * shape.distance
    if not (0 <= f < 8 and 0 <= r < 8):
        return None
    frm = r * 8 + f
    promotion = None
    piece = pos.board[frm]
    if piece >= 0 and piece % 6 == PieceKind.PAWN and square_rank(shape.square) in (0, 7):
        promotion = PieceKind.QUEEN
    return BoardMove(frm, shape.square, promotion)


def legal_move_mask(pos: Position) -> np.ndarray:
    mask = np.zeros(N_ACTIONS, dtype=bool)
    for m in pos.legal_moves():
        mask[move_to_index(pos, m)] = True
    return mask


def legal_move_indices(pos: Position) -> list[tuple[int, Move]]:
    """(action index, move) pairs for every legal move, sorted by index."""
    return sorted((move_to_index(pos, m), m) for m in pos.legal_moves())


# -- board tensor ----------------------------------------------------------

def encode_position(pos: Position) -> np.ndarray:
    """Return the ``(15, 8, 8)`` uint8 input tensor; index ``[plane, rank, file]``."""
    x = np.zeros((N_PLANES, 64), dtype=np.uint8)
    for sq, pc in enumerate(pos.board):
        if pc >= 0:
            x[pc, sq] = 1
    promoted = pos.promoted
    while promoted:
        low = promoted & -promoted
        x[12, low.bit_length() - 1] = 1
        promoted ^= low
    j = 0
    for color, kind, width in POCKET_GROUPS:
        x[13, j:j + min(pos.pockets[color][kind], width)] = 1
        j += width
    x[13, TURN_BIT + int(pos.turn)] = 1
    c = pos.castling
    x[14, 0] = bool(c & 1)   # P1 kingside
    x[14, 1] = bool(c & 4)   # P2 kingside
    x[14, 2] = bool(c & 2)   # P1 queenside
    x[14, 3] = bool(c & 8)   # P2 queenside
    reps = pos.repetition_count()
    x[14, 4] = reps == 1
    x[14, 5] = reps == 2
    return x.reshape(N_PLANES, 8, 8)


def decode_position(tensor: np.ndarray, ep_square: int | None = None) -> Position:
    """Rebuild a position from its input tensor.

    The tensor carries no en-passant square or move counters; the square may
    be supplied by the caller, counters come back as defaults. Repetition flags are restored as a synthetic
    history so that ``encode_position(decode_position(t))`` equals ``t``.
    """
    x = np.asarray(tensor).reshape(N_PLANES, 64)
    board = [-1] * 64
    for plane in range(12):
        for sq in np.flatnonzero(x[plane]):
            board[int(sq)] = plane
    promoted = 0
    for sq in np.flatnonzero(x[12]):
        promoted |= 1 << int(sq)
    pockets = [[0] * 5, [0] * 5]
    j = 0
    for color, kind, width in POCKET_GROUPS:
        pockets[color][kind] = int(x[13, j:j + width].sum())
        j += width
    turn = Color.WHITE if x[13, TURN_BIT] else Color.BLACK
    castling = (x[14, 0] * 1) | (x[14, 1] * 4) | (x[14, 2] * 2) | (x[14, 3] * 8)
    pos = Position(board, promoted, pockets, turn, int(castling), ep_square)
    reps = 1 if x[14, 4] else 2 if x[14, 5] else 0
    if reps:
        pos = Position(board, promoted, pockets, turn, int(castling), ep_square,
                       history=(pos.state_key(),) * reps)
    return pos


# -- training targets ------------------------------------------------------

@dataclass(frozen=True)
class PolicyTarget:
    index: int
    scale: float

    def dense(self) -> np.ndarray:
        t = np.zeros(N_ACTIONS, dtype=np.float64)
        t[self.index] = self.scale
        return t


def _outcome_for(result: GameResult, color: Color) -> str:
    if result == GameResult.DRAW:
        return "draw"
    return "win" if result == GameResult.win_for(color) else "loss"


_SCALES = {"win": 1.0, "draw": 0.5, "loss": 0.1}
_VALUES = {"win": 1.0, "draw": 0.5, "loss": 0.0}


def policy_target(move: Move, pos: Position, result: GameResult) -> PolicyTarget:
    """One-hot target for the played move, scaled 1.0 / 0.5 / 0.1 for the
    mover's win / draw / loss."""
    return PolicyTarget(move_to_index(pos, move), _SCALES[_outcome_for(result, pos.turn)])


def value_target(result: GameResult, mover: Color) -> float:
    return _VALUES[_outcome_for(result, mover)]
