"""Crazyhouse game state, legal move generation and move application."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

from ..errors import IllegalMove
from .bitboards import (
    ALL, BACK_RANKS, BETWEEN, BISHOP_EMPTY, KING_ATTACKS, KNIGHT_ATTACKS, LINE,
    PAWN_ATTACKS, ROOK_EMPTY, bishop_attacks, bits, rook_attacks,
)


class Color(IntEnum):
    WHITE = 0
    BLACK = 1
    P1 = 0
    P2 = 1

    @property
    def opponent(self) -> Color:
        return Color(1 - self)


class PieceKind(IntEnum):
    PAWN = 0
    KNIGHT = 1
    BISHOP = 2
    ROOK = 3
    QUEEN = 4
    KING = 5

    @property
    def letter(self) -> str:
        return "pnbrqk"[self]


class GameResult(Enum):
    P1_WIN = "1-0"
    P2_WIN = "0-1"
    DRAW = "1/2-1/2"

    @classmethod
    def win_for(cls, color: Color) -> GameResult:
        return cls.P1_WIN if color == Color.WHITE else cls.P2_WIN


PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = range(6)
WHITE, BLACK = 0, 1
EMPTY = -1
DROPPABLE = (PieceKind.PAWN, PieceKind.KNIGHT, PieceKind.BISHOP, PieceKind.ROOK, PieceKind.QUEEN)
PROMOTION_KINDS = (PieceKind.KNIGHT, PieceKind.BISHOP, PieceKind.ROOK, PieceKind.QUEEN)
# upper bounds on pocket counts, indexed by kind
POCKET_LIMITS = (16, 4, 4, 4, 2)

WHITE_KINGSIDE, WHITE_QUEENSIDE, BLACK_KINGSIDE, BLACK_QUEENSIDE = 1, 2, 4, 8
ALL_CASTLING = 15

FILE_NAMES = "abcdefgh"
_COLORS = (Color.WHITE, Color.BLACK)


def square(file: int, rank: int) -> int:
    return rank * 8 + file


def square_file(sq: int) -> int:
    return sq & 7


def square_rank(sq: int) -> int:
    return sq >> 3


def square_name(sq: int) -> str:
    return FILE_NAMES[sq & 7] + str((sq >> 3) + 1)


def parse_square(text: str) -> int:
    if len(text) != 2 or text[0] not in FILE_NAMES or text[1] not in "12345678":
        raise ValueError(f"bad square {text!r}")
    return square(FILE_NAMES.index(text[0]), int(text[1]) - 1)


@dataclass(frozen=True, slots=True)
class BoardMove:
    from_square: int
    to_square: int
    promotion: PieceKind | None = None

    def __str__(self) -> str:
        promo = self.promotion.letter if self.promotion is not None else ""
        return square_name(self.from_square) + square_name(self.to_square) + promo


@dataclass(frozen=True, slots=True)
class Drop:
    kind: PieceKind
    to_square: int

    def __str__(self) -> str:
        return self.kind.letter.upper() + "@" + square_name(self.to_square)


Move = BoardMove | Drop


def _piece(color: int, kind: int) -> int:
    return color * 6 + kind


# castling rights that survive a move touching each square
_CASTLE_KEEP = [ALL_CASTLING] * 64
_CASTLE_KEEP[4] &= ~(WHITE_KINGSIDE | WHITE_QUEENSIDE)
_CASTLE_KEEP[7] &= ~WHITE_KINGSIDE
_CASTLE_KEEP[0] &= ~WHITE_QUEENSIDE
_CASTLE_KEEP[60] &= ~(BLACK_KINGSIDE | BLACK_QUEENSIDE)
_CASTLE_KEEP[63] &= ~BLACK_KINGSIDE
_CASTLE_KEEP[56] &= ~BLACK_QUEENSIDE


class Position:
    """Immutable Crazyhouse position.

    ``board`` is a 64-tuple of piece codes (``color * 6 + kind``, -1 for an
    empty square). ``promoted`` is a bitboard of squares holding pieces that
    were created by promotion. ``pockets[color]`` holds counts for pawn,
    knight, bishop, rook and queen. ``castling`` is a bitmask of the
    ``WHITE_KINGSIDE`` style flags. ``history`` holds the state keys of every
    earlier position of the game, oldest first.
    """

    __slots__ = (
        "board", "promoted", "pockets", "turn", "castling", "ep_square",
        "halfmove_clock", "fullmove_number", "history",
        "_colors", "_kinds", "_key", "_legal", "_checkers",
    )

    def __init__(self, board, promoted=0, pockets=((0,) * 5, (0,) * 5), turn=Color.WHITE,
                 castling=0, ep_square=None, halfmove_clock=0, fullmove_number=1, history=()):
        self.board = tuple(board)
        self.promoted = promoted
        self.pockets = (tuple(pockets[0]), tuple(pockets[1]))
        self.turn = Color(turn)
        self.castling = castling
        self.ep_square = ep_square
        self.halfmove_clock = halfmove_clock
        self.fullmove_number = fullmove_number
        self.history = tuple(history)
        colors = [0, 0]
        kinds = [0] * 6
        for sq, pc in enumerate(self.board):
            if pc >= 0:
                colors[pc // 6] |= 1 << sq
                kinds[pc % 6] |= 1 << sq
        self._colors = colors
        self._kinds = kinds
        self._key = None
        self._legal = None
        self._checkers = None

    @classmethod
    def _raw(cls, board, promoted, pockets, turn, castling, ep, halfmove, fullmove, history,
             colors, kinds):
        # trusted constructor for move application; skips recomputing bitboards
        pos = object.__new__(cls)
        pos.board = board
        pos.promoted = promoted
        pos.pockets = pockets
        pos.turn = turn
        pos.castling = castling
        pos.ep_square = ep
        pos.halfmove_clock = halfmove
        pos.fullmove_number = fullmove
        pos.history = history
        pos._colors = colors
        pos._kinds = kinds
        pos._key = None
        pos._legal = None
        pos._checkers = None
        return pos

    # -- queries ---------------------------------------------------------

    def piece_at(self, sq: int) -> tuple[Color, PieceKind] | None:
        pc = self.board[sq]
        if pc < 0:
            return None
        return Color(pc // 6), PieceKind(pc % 6)

    def pieces(self, color: int, kind: int) -> int:
        return self._colors[color] & self._kinds[kind]

    def occupied(self) -> int:
        return self._colors[0] | self._colors[1]

    def occupied_by(self, color: int) -> int:
        return self._colors[color]

    @property
    def promoted_squares(self) -> frozenset[int]:
        return frozenset(bits(self.promoted))

    def pocket(self, color: int) -> dict[PieceKind, int]:
        return {k: n for k, n in zip(DROPPABLE, self.pockets[color])}

    def king_square(self, color: int) -> int:
        return self.pieces(color, KING).bit_length() - 1

    def attackers(self, sq: int, color: int, occ: int | None = None) -> int:
        """Bitboard of pieces of ``color`` attacking ``sq`` given occupancy ``occ``."""
        if occ is None:
            occ = self.occupied()
        them = self._colors[color] & occ
        kinds = self._kinds
        queens = kinds[QUEEN]
        return them & (
            (KNIGHT_ATTACKS[sq] & kinds[KNIGHT])
            | (KING_ATTACKS[sq] & kinds[KING])
            | (PAWN_ATTACKS[1 - color][sq] & kinds[PAWN])
            | (rook_attacks(sq, occ) & (kinds[ROOK] | queens))
            | (bishop_attacks(sq, occ) & (kinds[BISHOP] | queens))
        )

    def is_attacked(self, sq: int, color: int, occ: int | None = None) -> bool:
        return bool(self.attackers(sq, color, occ))

    def checkers(self) -> int:
        if self._checkers is None:
            ksq = self.king_square(self.turn)
            self._checkers = self.attackers(ksq, 1 - self.turn) if ksq >= 0 else 0
        return self._checkers

    def is_check(self) -> bool:
        return bool(self.checkers())

    def state_key(self) -> tuple:
        """Hashable key equal iff placement, promoted set, pockets, turn,
        castling rights and en-passant square all agree."""
        if self._key is None:
            self._key = (self.board, self.promoted, self.pockets, int(self.turn),
                         self.castling, self.ep_square)
        return self._key

    def repetition_count(self) -> int:
        key = self.state_key()
        n = 0
        for k in self.history:
            if k == key:
                n += 1
                if n == 2:
                    break
        return n

    def legal_moves(self) -> list[Move]:
        if self._legal is None:
            self._legal = _generate_legal(self)
        return list(self._legal)

    def is_legal(self, move: Move) -> bool:
        if self._legal is None:
            self._legal = _generate_legal(self)
        return move in self._legal

    def is_checkmate(self) -> bool:
        return self.is_check() and not self.legal_moves()

    def is_stalemate(self) -> bool:
        return not self.is_check() and not self.legal_moves()

    def game_result(self) -> GameResult | None:
        if self._legal is None:
            self._legal = _generate_legal(self)
        if not self._legal:
            if self.is_check():
                return GameResult.win_for(self.turn.opponent)
            return GameResult.DRAW
        if self.repetition_count() >= 2:
            return GameResult.DRAW
        return None

    def play(self, move: Move) -> Position:
        """Apply a legal move; raises IllegalMove otherwise."""
        if not self.is_legal(move):
            raise IllegalMove(f"{move} is not legal in this position")
        return _apply(self, move)

    def successor(self, move: Move) -> Position:
        """Apply ``move`` without checking legality (for moves already known legal)."""
        return _apply(self, move)

    def is_capture(self, move: Move) -> bool:
        if isinstance(move, Drop):
            return False
        if self.board[move.to_square] >= 0:
            return True
        return (move.to_square == self.ep_square
                and self.board[move.from_square] % 6 == PAWN
                and (move.from_square - move.to_square) % 8 != 0)

    def without_history(self) -> Position:
        return Position._raw(self.board, self.promoted, self.pockets, self.turn, self.castling,
                             self.ep_square, self.halfmove_clock, self.fullmove_number, (),
                             self._colors, self._kinds)

    def __eq__(self, other):
        if not isinstance(other, Position):
            return NotImplemented
        return (self.state_key() == other.state_key()
                and self.halfmove_clock == other.halfmove_clock
                and self.fullmove_number == other.fullmove_number
                and self.history == other.history)

    def __hash__(self):
        return hash(self.state_key())

    def __repr__(self):
        from .notation import to_fen
        return f"Position({to_fen(self)!r})"


def initial_position() -> Position:
    back = (ROOK, KNIGHT, BISHOP, QUEEN, KING, BISHOP, KNIGHT, ROOK)
    board = [EMPTY] * 64
    for f in range(8):
        board[f] = _piece(WHITE, back[f])
        board[8 + f] = _piece(WHITE, PAWN)
        board[48 + f] = _piece(BLACK, PAWN)
        board[56 + f] = _piece(BLACK, back[f])
    return Position(board, castling=ALL_CASTLING)


# -- move generation -------------------------------------------------------

def _generate_legal(pos: Position) -> tuple[Move, ...]:
    us = int(pos.turn)
    them = 1 - us
    colors, kinds = pos._colors, pos._kinds
    own = colors[us]
    enemy = colors[them]
    occ = own | enemy
    board = pos.board
    ksq = (own & kinds[KING]).bit_length() - 1
    checkers = pos.checkers()
    moves: list[Move] = []

    # king steps; test with the king lifted so sliders see through its square
    occ_no_king = occ ^ (1 << ksq)
    for t in bits(KING_ATTACKS[ksq] & ~own):
        if not pos.attackers(t, them, occ_no_king):
            moves.append(BoardMove(ksq, t))

    if checkers & (checkers - 1):
        return tuple(moves)

    if checkers:
        csq = checkers.bit_length() - 1
        between = BETWEEN[ksq][csq]
        target_mask = checkers | between
        drop_mask = between
    else:
        target_mask = ALL
        drop_mask = ALL & ~occ

    # pinned pieces and the line each is confined to
    pin_lines = {}
    snipers = ((ROOK_EMPTY[ksq] & (kinds[ROOK] | kinds[QUEEN]))
               | (BISHOP_EMPTY[ksq] & (kinds[BISHOP] | kinds[QUEEN]))) & enemy
    for s in bits(snipers):
        blockers = BETWEEN[ksq][s] & occ
        if blockers and not blockers & (blockers - 1) and blockers & own:
            pin_lines[blockers.bit_length() - 1] = LINE[ksq][s]

    forward = 8 if us == WHITE else -8
    last_rank_lo = 56 if us == WHITE else 0
    start_lo = 8 if us == WHITE else 48
    ep = pos.ep_square

    for frm in bits(own & ~kinds[KING]):
        kind = board[frm] % 6
        allowed = target_mask & pin_lines.get(frm, ALL)
        if kind == PAWN:
            to = frm + forward
            if board[to] < 0:
                if (1 << to) & allowed:
                    _add_pawn_move(moves, frm, to, last_rank_lo)
                if start_lo <= frm < start_lo + 8:
                    to2 = to + forward
                    if board[to2] < 0 and (1 << to2) & allowed:
                        moves.append(BoardMove(frm, to2))
            for to in bits(PAWN_ATTACKS[us][frm] & enemy & allowed):
                _add_pawn_move(moves, frm, to, last_rank_lo)
            if ep is not None and PAWN_ATTACKS[us][frm] >> ep & 1:
                if _ep_is_legal(pos, frm, ep, ksq):
                    moves.append(BoardMove(frm, ep))
            continue
        if kind == KNIGHT:
            att = KNIGHT_ATTACKS[frm]
        elif kind == BISHOP:
            att = bishop_attacks(frm, occ)
        elif kind == ROOK:
            att = rook_attacks(frm, occ)
        else:
            att = bishop_attacks(frm, occ) | rook_attacks(frm, occ)
        for to in bits(att & ~own & allowed):
            moves.append(BoardMove(frm, to))

    if not checkers:
        _add_castling(pos, moves, us, occ)

    pocket = pos.pockets[us]
    if drop_mask and any(pocket):
        empties = list(bits(drop_mask))
        for kind, n in enumerate(pocket):
            if n:
                pk = PieceKind(kind)
                if kind == PAWN:
                    moves.extend(Drop(pk, t) for t in empties if not (1 << t) & BACK_RANKS)
                else:
                    moves.extend(Drop(pk, t) for t in empties)
    return tuple(moves)


def _add_pawn_move(moves, frm, to, last_rank_lo):
    if last_rank_lo <= to < last_rank_lo + 8:
        for promo in PROMOTION_KINDS:
            moves.append(BoardMove(frm, to, promo))
    else:
        moves.append(BoardMove(frm, to))


def _ep_is_legal(pos: Position, frm: int, ep: int, ksq: int) -> bool:
    us = pos.turn
    captured = ep - 8 if us == WHITE else ep + 8
    occ = (pos.occupied() ^ (1 << frm) ^ (1 << captured)) | (1 << ep)
    # the captured pawn no longer attacks anything; mask it out of the enemy set
    them = pos._colors[1 - us] & ~(1 << captured)
    kinds = pos._kinds
    queens = kinds[QUEEN]
    if rook_attacks(ksq, occ) & (kinds[ROOK] | queens) & them:
        return False
    if bishop_attacks(ksq, occ) & (kinds[BISHOP] | queens) & them:
        return False
    if KNIGHT_ATTACKS[ksq] & kinds[KNIGHT] & them:
        return False
    if PAWN_ATTACKS[us][ksq] & kinds[PAWN] & them:
        return False
    return True


def _add_castling(pos: Position, moves, us, occ):
    rights = pos.castling
    base = 0 if us == WHITE else 56
    king, rook = _piece(us, KING), _piece(us, ROOK)
    board = pos.board
    if board[base + 4] != king:
        return
    them = 1 - us
    ks = WHITE_KINGSIDE if us == WHITE else BLACK_KINGSIDE
    qs = WHITE_QUEENSIDE if us == WHITE else BLACK_QUEENSIDE
    if rights & ks and board[base + 7] == rook:
        if not occ & (0b11 << (base + 5)):
            if not pos.attackers(base + 5, them, occ) and not pos.attackers(base + 6, them, occ):
                moves.append(BoardMove(base + 4, base + 6))
    if rights & qs and board[base] == rook:
        if not occ & (0b111 << (base + 1)):
            if not pos.attackers(base + 3, them, occ) and not pos.attackers(base + 2, them, occ):
                moves.append(BoardMove(base + 4, base + 2))


# -- move application ------------------------------------------------------

def _apply(pos: Position, move: Move) -> Position:
    """Apply ``move`` without a legality check."""
    us = int(pos.turn)
    them = 1 - us
    board = list(pos.board)
    pockets = [list(pos.pockets[0]), list(pos.pockets[1])]
    colors = list(pos._colors)
    kinds = list(pos._kinds)
    promoted = pos.promoted
    castling = pos.castling
    ep = None
    halfmove = pos.halfmove_clock + 1
    history = pos.history + (pos.state_key(),)

    if isinstance(move, Drop):
        to = move.to_square
        kind = int(move.kind)
        board[to] = _piece(us, kind)
        pockets[us][kind] -= 1
        bit = 1 << to
        colors[us] |= bit
        kinds[kind] |= bit
        if kind == PAWN:
            halfmove = 0
    else:
        frm, to = move.from_square, move.to_square
        pc = board[frm]
        kind = pc % 6
        fbit, tbit = 1 << frm, 1 << to
        captured = board[to]
        if captured >= 0:
            ckind = captured % 6
            pockets[us][PAWN if promoted & tbit else ckind] += 1
            colors[them] ^= tbit
            kinds[ckind] ^= tbit
            halfmove = 0
        elif kind == PAWN and to == pos.ep_square and (to - frm) % 8 != 0:
            csq = to - 8 if us == WHITE else to + 8
            board[csq] = EMPTY
            cbit = 1 << csq
            colors[them] ^= cbit
            kinds[PAWN] ^= cbit
            pockets[us][PAWN] += 1
        was_promoted = promoted & fbit
        promoted &= ~(fbit | tbit)
        board[frm] = EMPTY
        colors[us] ^= fbit | tbit
        kinds[kind] ^= fbit
        if move.promotion is not None:
            nk = int(move.promotion)
            board[to] = _piece(us, nk)
            kinds[nk] |= tbit
            promoted |= tbit
        else:
            board[to] = pc
            kinds[kind] |= tbit
            if was_promoted:
                promoted |= tbit
        if kind == PAWN:
            halfmove = 0
            if abs(to - frm) == 16:
                mid = (frm + to) // 2
                if PAWN_ATTACKS[us][mid] & colors[them] & kinds[PAWN]:
                    ep = mid
        elif kind == KING and abs(to - frm) == 2:
            if to > frm:
                rf, rt = frm + 3, frm + 1
            else:
                rf, rt = frm - 4, frm - 1
            board[rt] = board[rf]
            board[rf] = EMPTY
            rbits = (1 << rf) | (1 << rt)
            colors[us] ^= rbits
            kinds[ROOK] ^= rbits
            if promoted & (1 << rf):
                promoted = (promoted & ~(1 << rf)) | (1 << rt)
        castling &= _CASTLE_KEEP[frm] & _CASTLE_KEEP[to]

    fullmove = pos.fullmove_number + (1 if us == BLACK else 0)
    return Position._raw(
        tuple(board), promoted, (tuple(pockets[0]), tuple(pockets[1])), _COLORS[them], castling,
        ep, halfmove, fullmove, history, colors, kinds,
    )


def legal_moves(pos: Position) -> list[Move]:
    return pos.legal_moves()


def apply_move(pos: Position, move: Move) -> Position:
    return pos.play(move)


def game_result(pos: Position) -> GameResult | None:
    return pos.game_result()


def state_key(pos: Position) -> tuple:
    return pos.state_key()


def repetition_count(pos: Position) -> int:
    return pos.repetition_count()


def perft(pos: Position, depth: int) -> int:
    """Count legal move sequences of exactly ``depth`` plies."""
    if depth <= 0:
        return 1
    moves = pos.legal_moves()
    if depth == 1:
        return len(moves)
    return sum(perft(_apply(pos, m), depth - 1) for m in moves)
